#pragma once

// Poisson bivectors on a chart and the structures they induce: the bracket of
// functions, the sharp map, the cotangent Lie algebroid, the Koszul bracket of
// forms and the Lichnerowicz differential.

#include <array>
#include <map>

#include "lac/algebroid.hpp"
#include "lac/calculus.hpp"

namespace lac {

struct PoissonReport {
  /// [Λ, Λ].
  GradedElement residual{Variance::multivector, 0};
  /// (i, j, l) with i < j < l → {{x^i,x^j},x^l} + {{x^j,x^l},x^i} + {{x^l,x^i},x^j}.
  std::map<std::array<unsigned, 3>, Expr> jacobi_defects;
  bool passed = true;
};

/// Throws ShapeError unless Λ is a multivector of degree 2 (or zero) whose
/// rank is the chart dimension.
PoissonReport is_poisson(const Chart& chart, const GradedElement& bivector);

class PoissonStructure {
 public:
  /// Runs is_poisson and records the outcome.
  PoissonStructure(Chart chart, GradedElement bivector);

  const Chart& chart() const { return tangent_.chart(); }
  unsigned dimension() const { return tangent_.dimension(); }
  const GradedElement& bivector() const { return bivector_; }
  /// Λ^{ij} for any i, j.
  Expr coefficient(unsigned i, unsigned j) const;
  const Algebroid& tangent() const { return tangent_; }
  bool verified() const { return verified_; }

  friend bool operator==(const PoissonStructure& x, const PoissonStructure& y) {
    return x.chart() == y.chart() && x.bivector_ == y.bivector_;
  }

 private:
  Algebroid tangent_;
  GradedElement bivector_;
  bool verified_;
};

/// {f, g} = Λ(df, dg).
Expr poisson_bracket(const PoissonStructure& ps, const Expr& f, const Expr& g);

/// Λ♯ on forms of the tangent algebroid, wedge-multiplicative, identity in
/// degree 0.
GradedElement sharp(const PoissonStructure& ps, const GradedElement& eta);

/// Basis dx^1..dx^n, anchor ρ(dx^i) = Λ♯(dx^i), {dx^i, dx^j} = d Λ^{ij}.
/// Throws VerificationError for an unverified structure unless `force`.
Algebroid cotangent_algebroid(const PoissonStructure& ps, bool force = false);

/// Schouten bracket of the cotangent algebroid, applied to forms.
GradedElement koszul_bracket(const PoissonStructure& ps, const GradedElement& eta,
                             const GradedElement& zeta, bool force = false);

/// δ_Λ(P) = [Λ, P].
GradedElement lichnerowicz_differential(const PoissonStructure& ps, const GradedElement& p);

}  // namespace lac
