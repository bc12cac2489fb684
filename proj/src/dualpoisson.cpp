#include "lac/dualpoisson.hpp"

#include <stdexcept>

#include "lac/errors.hpp"

namespace lac {
namespace {

// Coefficients of the dual bivector in the chart (x, ξ).
GradedElement dual_bivector(const Algebroid& a) {
  const unsigned n = a.dimension();
  const unsigned k = a.rank();
  GradedElement out(Variance::multivector, n + k);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned b = 0; b < k; ++b) out.add(IndexSet::of({i, n + b}), -a.anchor(b, i));
  }
  for (const auto& e : a.structure_entries()) {
    out.add(IndexSet::of({n + e.a, n + e.b}), e.value * Expr::variable(n + e.c));
  }
  return out;
}

}  // namespace

DualChart make_dual_chart(const Chart& base, unsigned rank, std::string_view fiber_prefix) {
  DualChart out;
  out.base = base;
  out.fiber = Chart::numbered(fiber_prefix, rank);
  for (const auto& name : out.fiber.names()) {
    if (base.find(name)) {
      throw Error("fiber coordinate '" + name + "' collides with a base coordinate");
    }
  }
  out.full = base.extended(out.fiber);
  return out;
}

DualPoisson dual_poisson(const Algebroid& a, std::string_view fiber_prefix, bool force) {
  if (!a.verified() && !force) require_verified(a, "dual_poisson");
  DualChart chart = make_dual_chart(a.chart(), a.rank(), fiber_prefix);
  PoissonStructure ps(chart.full, dual_bivector(a));

  // The bivector is read off the generator brackets; recompute them.
  const unsigned n = a.dimension();
  const unsigned k = a.rank();
  auto x = [](unsigned i) { return Expr::variable(i); };
  auto xi = [&](unsigned b) { return Expr::variable(chart.fiber_var(b)); };
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if (!poisson_bracket(ps, x(i), x(j)).is_zero()) {
        throw std::logic_error("dual_poisson: base coordinates do not commute");
      }
    }
    for (unsigned b = 0; b < k; ++b) {
      if (poisson_bracket(ps, xi(b), x(i)) != a.anchor(b, i)) {
        throw std::logic_error("dual_poisson: {xi, x} differs from the anchor");
      }
    }
  }
  for (unsigned b = 0; b < k; ++b) {
    for (unsigned c = 0; c < k; ++c) {
      if (poisson_bracket(ps, xi(b), xi(c)) != phi(chart, bracket_basis(a, b, c))) {
        throw std::logic_error("dual_poisson: {xi, xi} differs from the structure functions");
      }
    }
  }
  return {std::move(chart), std::move(ps)};
}

Expr phi(const DualChart& chart, const Section& x) {
  if (x.rank() != chart.rank()) throw MismatchError("phi: section rank differs from the fiber rank");
  Expr out;
  for (unsigned a = 0; a < x.rank(); ++a) {
    require_within(x[a], chart.base_dimension(), "phi");
    if (!x[a].is_zero()) out += x[a] * Expr::variable(chart.fiber_var(a));
  }
  return out;
}

Expr pullback(const DualChart& chart, const Expr& f) {
  require_within(f, chart.base_dimension(), "pullback");
  return f;
}

GradedElement homogeneity_residual(const DualPoisson& dual) {
  const unsigned total = dual.structure.dimension();
  GradedElement z(Variance::multivector, total);
  for (unsigned a = 0; a < dual.chart.rank(); ++a) {
    const Var v = dual.chart.fiber_var(a);
    z.add(IndexSet::single(v), Expr::variable(v));
  }
  return schouten_bracket(dual.structure.tangent(), z, dual.structure.bivector()) +
         dual.structure.bivector();
}

std::vector<GeneratorResidual> transpose_anchor_check(const Algebroid& a, const DualPoisson& dual,
                                                      std::string_view cotangent_prefix) {
  if (dual.chart.base != a.chart() || dual.chart.rank() != a.rank() ||
      dual.structure.bivector() != dual_bivector(a)) {
    throw MismatchError("transpose_anchor_check: the dual structure does not belong to the algebroid");
  }
  const unsigned n = a.dimension();
  const unsigned k = a.rank();
  const DualPoisson cotangent = dual_poisson(construct_tangent(a.chart()), cotangent_prefix);

  std::vector<Expr> images;
  images.reserve(n + k);
  for (unsigned i = 0; i < n; ++i) images.push_back(Expr::variable(i));
  for (unsigned b = 0; b < k; ++b) {
    Expr image;
    for (unsigned i = 0; i < n; ++i) image += a.anchor(b, i) * Expr::variable(n + i);
    images.push_back(std::move(image));
  }

  std::vector<GeneratorResidual> out;
  const Chart& chart = dual.chart.full;
  for (unsigned h1 = 0; h1 < n + k; ++h1) {
    for (unsigned h2 = h1 + 1; h2 < n + k; ++h2) {
      const Expr lhs = poisson_bracket(cotangent.structure, images[h1], images[h2]);
      const Expr rhs =
          poisson_bracket(dual.structure, Expr::variable(h1), Expr::variable(h2)).substitute(images);
      out.push_back({chart.name(h1), chart.name(h2), lhs - rhs});
    }
  }
  return out;
}

}  // namespace lac
