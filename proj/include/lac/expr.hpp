#pragma once

// Exact-rational multivariate polynomials over a named coordinate chart.
//
// An Expr stores its variables by position (Var) rather than by name, so the
// same value can be read in any chart whose leading coordinates agree. The
// Chart is only consulted for parsing and printing.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace lac {

using Rational = mpq_class;
using Var = std::uint32_t;
using Exponent = std::uint32_t;

/// Ordered list of coordinate names. Names match [A-Za-z][A-Za-z0-9_]* and
/// are pairwise distinct.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> names);

  /// prefix1, prefix2, ..., prefixN.
  static Chart numbered(std::string_view prefix, std::size_t count);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(Var v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Var> find(std::string_view name) const;
  /// Throws UnknownVariableError.
  Var index_of(std::string_view name) const;

  /// This chart's coordinates followed by `tail`'s.
  Chart extended(const Chart& tail) const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> names_;
};

bool is_valid_coordinate_name(std::string_view name);

/// Product of powers of variables; the empty monomial is 1.
class Monomial {
 public:
  using Factor = std::pair<Var, Exponent>;

  Monomial() = default;
  static Monomial variable(Var v, Exponent e = 1);

  Exponent exponent(Var v) const;
  std::uint64_t degree() const;
  bool is_one() const { return factors_.empty(); }
  /// Sorted by variable, exponents strictly positive.
  const std::vector<Factor>& factors() const { return factors_; }

  /// Throws std::overflow_error if an exponent leaves the Exponent range.
  friend Monomial operator*(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order, largest first, variables ranked by chart
/// position. This is the storage and printing order of Expr terms.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Expr {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  Expr() = default;
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Expr variable(Var v);
  static Expr term(const Rational& coefficient, Monomial monomial);

  bool is_zero() const { return terms_.empty(); }
  /// Value of a constant polynomial; nullopt if any variable occurs.
  std::optional<Rational> constant_value() const;
  const TermMap& terms() const { return terms_; }
  /// One past the largest variable index that occurs (0 for constants).
  Var variable_bound() const;
  std::uint64_t total_degree() const;

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(const Expr& other);
  /// Multiplies every coefficient by c.
  Expr& scale(const Rational& c);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(Expr a);

  Expr pow(std::uint64_t exponent) const;
  Expr derivative(Var v) const;

  /// Throws Error naming the first variable of the support missing from
  /// `point`.
  Rational evaluate(const std::map<Var, Rational>& point) const;

  /// Replaces variable i by images[i]. Throws ShapeError if a variable of the
  /// support has no image.
  Expr substitute(std::span<const Expr> images) const;

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

// Operations at the level of named coordinates.

/// Parses the expression grammar; throws ParseError or UnknownVariableError.
Expr parse(std::string_view text, const Chart& chart);

/// Canonical text: terms in grlex order, explicit '*', no redundant
/// parentheses. parse(to_string(f, c), c) == f.
std::string to_string(const Expr& f, const Chart& chart);
std::string to_string(const Rational& q);

inline bool is_zero(const Expr& f) { return f.is_zero(); }

/// Throws UnknownVariableError.
Expr differentiate(const Expr& f, const Chart& chart, std::string_view coordinate);

/// Throws Error if a coordinate of f's support is unassigned, and
/// UnknownVariableError if `point` names a coordinate outside the chart.
Rational eval_at(const Expr& f, const Chart& chart,
                 const std::map<std::string, Rational>& point);

/// Throws ShapeError if f uses a variable at or beyond `bound`.
void require_within(const Expr& f, std::size_t bound, std::string_view context);

}  // namespace lac
