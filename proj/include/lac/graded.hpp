#pragma once

// Multivectors and forms over a rank-k bundle with a global frame.
//
// A degree-p element is stored as coefficients on strictly increasing index
// tuples I = (i1 < ... < ip):
//   multivector  P = sum_I P_I e_{i1} ^ ... ^ e_{ip}
//   form         η = sum_I η_I e^{i1} ^ ... ^ e^{ip},  η_I = η(e_{i1}, ..., e_{ip})
// The wedge product is the unnormalized shuffle product, so the frame and
// coframe pair to the identity: <e^I, e_J> = δ_IJ.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "lac/expr.hpp"

namespace lac {

/// A strictly increasing tuple of 0-based frame indices, stored as a bitset.
class IndexSet {
 public:
  static constexpr unsigned kMaxRank = 63;

  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}
  /// Throws ShapeError on repeated or out-of-range indices.
  static IndexSet of(std::span<const unsigned> indices);
  static IndexSet of(std::initializer_list<unsigned> indices);
  static constexpr IndexSet single(unsigned a) { return IndexSet(std::uint64_t{1} << a); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr unsigned degree() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool contains(unsigned a) const { return (bits_ >> a) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  /// Largest index + 1, 0 for the empty tuple.
  constexpr unsigned bound() const { return 64U - static_cast<unsigned>(std::countl_zero(bits_)); }
  std::vector<unsigned> elements() const;
  /// Number of elements strictly below a.
  constexpr unsigned rank_of(unsigned a) const {
    return static_cast<unsigned>(std::popcount(bits_ & ((std::uint64_t{1} << a) - 1)));
  }

  constexpr IndexSet with(unsigned a) const { return IndexSet(bits_ | (std::uint64_t{1} << a)); }
  constexpr IndexSet without(unsigned a) const { return IndexSet(bits_ & ~(std::uint64_t{1} << a)); }

  friend constexpr bool operator==(IndexSet, IndexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Degree first, then lexicographic on the increasing tuples.
struct IndexSetOrder {
  bool operator()(IndexSet a, IndexSet b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const std::uint64_t diff = a.bits() ^ b.bits();
    if (diff == 0) return false;
    return (a.bits() & (diff & (~diff + 1))) != 0;
  }
};

/// All index sets of the given degree inside {0..rank-1}, in IndexSetOrder.
std::vector<IndexSet> index_sets(unsigned rank, unsigned degree);

/// Comma-separated, 1-based ("1,3"). The empty tuple prints as "scalar".
std::string tuple_label(IndexSet s);

enum class Variance { multivector, form };

const char* to_string(Variance v);

class GradedElement {
 public:
  using TermMap = std::map<IndexSet, Expr, IndexSetOrder>;

  GradedElement(Variance variance, unsigned rank);

  static GradedElement scalar(Variance variance, unsigned rank, Expr f);
  static GradedElement basis(Variance variance, unsigned rank, IndexSet s, Expr coefficient = 1);

  Variance variance() const { return variance_; }
  unsigned rank() const { return rank_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  const Expr& coefficient(IndexSet s) const;
  /// Adds c to the coefficient of s. Throws ShapeError if s exceeds the rank.
  void add(IndexSet s, const Expr& c);

  GradedElement component(unsigned degree) const;
  std::set<unsigned> degrees() const;
  /// The degree of a nonzero homogeneous element.
  std::optional<unsigned> pure_degree() const;
  Var variable_bound() const;

  /// The same coefficient table read with the other variance.
  GradedElement reinterpreted(Variance v) const;

  GradedElement& operator+=(const GradedElement& other);
  GradedElement& operator-=(const GradedElement& other);
  /// Multiplication by a function (a degree-0 element).
  GradedElement& operator*=(const Expr& f);

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(const Expr& f, GradedElement a) { return a *= f; }
  friend GradedElement operator-(GradedElement a) { return a *= Expr(-1); }

  friend bool operator==(const GradedElement&, const GradedElement&) = default;

 private:
  Variance variance_;
  unsigned rank_;
  TermMap terms_;
};

/// A section of the bundle: one coefficient function per frame element.
class Section {
 public:
  explicit Section(unsigned rank) : components_(rank) {}
  explicit Section(std::vector<Expr> components) : components_(std::move(components)) {}
  static Section basis(unsigned rank, unsigned a, Expr coefficient = 1);
  /// Throws MismatchError unless `p` is a multivector of pure degree 1 (or zero).
  static Section from_multivector(const GradedElement& p);

  unsigned rank() const { return static_cast<unsigned>(components_.size()); }
  const Expr& operator[](unsigned a) const { return components_.at(a); }
  Expr& operator[](unsigned a) { return components_.at(a); }
  const std::vector<Expr>& components() const { return components_; }
  bool is_zero() const;

  GradedElement to_multivector() const;

  Section& operator+=(const Section& other);
  Section& operator-=(const Section& other);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const Expr& f, Section s);

  friend bool operator==(const Section&, const Section&) = default;

 private:
  std::vector<Expr> components_;
};

// Pointwise exterior algebra.

/// Shuffle product. Throws MismatchError on variance or rank mismatch.
GradedElement wedge(const GradedElement& p, const GradedElement& q);

/// i(P)η with i(P1 ^ ... ^ Pp) = i(P1) o ... o i(Pp).
GradedElement interior_product(const GradedElement& p, const GradedElement& eta);

/// <η, P>: zero across unequal degrees, determinant rule on decomposables.
Expr pairing(const GradedElement& eta, const GradedElement& p);

/// Multiplies the degree-p component by p.
GradedElement degree_scale(const GradedElement& p);

/// Value of the degree-|args| component of η on the given sections, by
/// multilinear expansion.
Expr evaluate_form(const GradedElement& eta, std::span<const Section> args);

/// Sign of e_{a1} ^ ... ^ e_{ap} relative to the increasing tuple of the same
/// indices; 0 if an index repeats.
int ordering_sign(std::span<const unsigned> indices);

}  // namespace lac
