#pragma once

// The linear Poisson structure on the total space of the dual bundle E*, in
// the chart (x^1..x^n, ξ_1..ξ_k) whose fiber coordinates are the frame
// sections e_a read as functions on E*.

#include <string>
#include <string_view>
#include <vector>

#include "lac/algebroid.hpp"
#include "lac/poisson.hpp"

namespace lac {

struct DualChart {
  Chart base;
  Chart fiber;
  /// base followed by fiber.
  Chart full;

  unsigned base_dimension() const { return static_cast<unsigned>(base.size()); }
  unsigned rank() const { return static_cast<unsigned>(fiber.size()); }
  /// Position of ξ_a in the full chart.
  Var fiber_var(unsigned a) const { return static_cast<Var>(base.size() + a); }
};

/// Fiber names prefix1..prefixk. Throws Error if one collides with a base name.
DualChart make_dual_chart(const Chart& base, unsigned rank, std::string_view fiber_prefix = "xi");

struct DualPoisson {
  DualChart chart;
  PoissonStructure structure;
};

/// {ξ_a, ξ_b} = Σ_c C^c_{ab} ξ_c, {ξ_a, x^i} = ρ^i_a, {x^i, x^j} = 0.
/// Throws VerificationError for an unverified algebroid unless `force`.
DualPoisson dual_poisson(const Algebroid& a, std::string_view fiber_prefix = "xi",
                         bool force = false);

/// Φ_X = Σ_a X^a ξ_a.
Expr phi(const DualChart& chart, const Section& x);

/// f∘π for a function on the base.
Expr pullback(const DualChart& chart, const Expr& f);

/// [Z, Λ] + Λ for the Liouville field Z = Σ_a ξ_a ∂/∂ξ_a.
GradedElement homogeneity_residual(const DualPoisson& dual);

struct GeneratorResidual {
  std::string left;
  std::string right;
  Expr value;
};

/// {h1∘ᵗρ, h2∘ᵗρ}_{T*M} − {h1, h2}_{E*}∘ᵗρ for each pair h1 < h2 of
/// coordinates of E*, where ᵗρ(x, ζ) = (x, Σ_i ρ^i_a(x) ζ_i). Residuals are
/// written in the chart of T*M, whose fiber coordinates use
/// `cotangent_prefix`.
std::vector<GeneratorResidual> transpose_anchor_check(const Algebroid& a, const DualPoisson& dual,
                                                      std::string_view cotangent_prefix = "zeta");

}  // namespace lac
