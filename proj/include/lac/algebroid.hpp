#pragma once

// Lie algebroids over a single global chart, given by the anchor matrix ρ^i_a
// and the structure functions C^c_{ab} of a global frame (e_1, ..., e_k):
//   ρ(e_a) = Σ_i ρ^i_a ∂/∂x^i,   {e_a, e_b} = Σ_c C^c_{ab} e_c.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "lac/expr.hpp"
#include "lac/graded.hpp"

namespace lac {

/// One structure function C^c_{ab}, 0-based, a < b.
struct StructureEntry {
  unsigned c;
  unsigned a;
  unsigned b;
  Expr value;
};

class Algebroid {
 public:
  /// anchor[a][i] = ρ^i_a. Does not check the axioms. Throws ShapeError on
  /// wrong table sizes, out-of-range or non-increasing indices, repeated
  /// entries, or coefficients that use coordinates outside the chart.
  static Algebroid create(Chart chart, unsigned rank, std::vector<std::vector<Expr>> anchor,
                          const std::vector<StructureEntry>& structure);

  const Chart& chart() const { return chart_; }
  unsigned dimension() const { return static_cast<unsigned>(chart_.size()); }
  unsigned rank() const { return rank_; }

  const Expr& anchor(unsigned a, unsigned i) const { return anchor_[a][i]; }
  /// ρ(e_a) as a list of n coordinate components.
  const std::vector<Expr>& anchor_field(unsigned a) const { return anchor_[a]; }
  /// C^c_{ab} for any a, b, using antisymmetry.
  Expr structure(unsigned c, unsigned a, unsigned b) const;
  /// The nonzero entries with a < b, ordered by (a, b, c).
  std::vector<StructureEntry> structure_entries() const;

  /// ρ(e_a) f.
  Expr anchor_action(unsigned a, const Expr& f) const;
  /// ρ(s) f.
  Expr anchor_action(const Section& s, const Expr& f) const;

  /// True for constructors that guarantee the axioms and for the result of
  /// certify().
  bool verified() const { return verified_; }

  /// Equality of the structure data; the verified flag is ignored.
  friend bool operator==(const Algebroid& x, const Algebroid& y);

 private:
  friend Algebroid certify(const Algebroid& a);
  friend Algebroid construct_tangent(const Chart& chart);

  Algebroid() = default;

  Chart chart_;
  unsigned rank_ = 0;
  std::vector<std::vector<Expr>> anchor_;
  // structure_[(a * rank + b) * rank + c] = C^c_{ab}, full antisymmetric table.
  std::vector<Expr> structure_;
  bool verified_ = false;
};

/// Chart x1..xn, identity anchor, zero structure functions.
Algebroid construct_tangent(unsigned n);
Algebroid construct_tangent(const Chart& chart);

/// Zero anchor. With no chart the base is a point and the entries must be
/// constants.
Algebroid construct_lie_algebra(unsigned rank, const std::vector<StructureEntry>& structure,
                                const std::optional<Chart>& base = std::nullopt);

void require_section_of(const Algebroid& a, const Section& s, const char* context);
void require_element_of(const Algebroid& a, const GradedElement& g, const char* context);

/// {s1, s2}.
Section bracket_sections(const Algebroid& a, const Section& s1, const Section& s2);

/// {e_a, e_b} = Σ_c C^c_{ab} e_c.
Section bracket_basis(const Algebroid& a, unsigned i, unsigned j);

/// Commutator of polynomial vector fields given by their components.
std::vector<Expr> vector_field_bracket(const std::vector<Expr>& x, const std::vector<Expr>& y);

/// Wedge-multiplicative extension of ρ to multivectors, landing in the
/// tangent algebroid of the same chart. Degree 0 is unchanged.
GradedElement anchor_push(const Algebroid& a, const GradedElement& p);

struct AxiomReport {
  /// (a, b) with a < b → components of ρ({e_a, e_b}) − [ρ(e_a), ρ(e_b)].
  std::map<std::pair<unsigned, unsigned>, std::vector<Expr>> anchor_residuals;
  /// (a, b, c) with a < b < c → {{e_a,e_b},e_c} + {{e_b,e_c},e_a} + {{e_c,e_a},e_b}.
  std::map<std::array<unsigned, 3>, Section> jacobi_residuals;
  bool passed = true;
};

AxiomReport verify_axioms(const Algebroid& a);

/// A copy marked verified. Throws VerificationError if an axiom fails.
Algebroid certify(const Algebroid& a);

/// Throws VerificationError unless a.verified().
void require_verified(const Algebroid& a, const char* context);

}  // namespace lac
