#include "lac/poisson.hpp"

#include "lac/errors.hpp"

namespace lac {
namespace {

void require_bivector(const Chart& chart, const GradedElement& bivector) {
  if (bivector.variance() != Variance::multivector) {
    throw ShapeError("a Poisson bivector must be a multivector");
  }
  if (bivector.rank() != chart.size()) {
    throw ShapeError("bivector rank " + std::to_string(bivector.rank()) +
                     " does not match the chart dimension " + std::to_string(chart.size()));
  }
  for (unsigned d : bivector.degrees()) {
    if (d != 2) {
      throw ShapeError("a Poisson bivector must have degree 2, found degree " + std::to_string(d));
    }
  }
  if (bivector.variable_bound() > chart.size()) {
    throw ShapeError("bivector coefficient uses a coordinate outside the chart");
  }
}

Expr bracket_of(const GradedElement& bivector, const Expr& f, const Expr& g) {
  Expr out;
  for (const auto& [s, c] : bivector.terms()) {
    const auto e = s.elements();
    const Expr cross =
        f.derivative(e[0]) * g.derivative(e[1]) - f.derivative(e[1]) * g.derivative(e[0]);
    if (!cross.is_zero()) out += c * cross;
  }
  return out;
}

}  // namespace

PoissonReport is_poisson(const Chart& chart, const GradedElement& bivector) {
  require_bivector(chart, bivector);
  const Algebroid tangent = construct_tangent(chart);
  PoissonReport report;
  report.residual = schouten_bracket(tangent, bivector, bivector);
  report.passed = report.residual.is_zero();
  const unsigned n = static_cast<unsigned>(chart.size());
  auto x = [](unsigned i) { return Expr::variable(i); };
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      for (unsigned l = j + 1; l < n; ++l) {
        Expr defect = bracket_of(bivector, bracket_of(bivector, x(i), x(j)), x(l)) +
                      bracket_of(bivector, bracket_of(bivector, x(j), x(l)), x(i)) +
                      bracket_of(bivector, bracket_of(bivector, x(l), x(i)), x(j));
        if (!defect.is_zero()) report.passed = false;
        report.jacobi_defects.emplace(std::array{i, j, l}, std::move(defect));
      }
    }
  }
  return report;
}

PoissonStructure::PoissonStructure(Chart chart, GradedElement bivector)
    : tangent_(construct_tangent(chart)),
      bivector_(std::move(bivector)),
      verified_(is_poisson(chart, bivector_).passed) {}

Expr PoissonStructure::coefficient(unsigned i, unsigned j) const {
  if (i == j) return Expr{};
  if (i < j) return bivector_.coefficient(IndexSet::of({i, j}));
  return -bivector_.coefficient(IndexSet::of({j, i}));
}

Expr poisson_bracket(const PoissonStructure& ps, const Expr& f, const Expr& g) {
  require_within(f, ps.dimension(), "poisson_bracket");
  require_within(g, ps.dimension(), "poisson_bracket");
  return bracket_of(ps.bivector(), f, g);
}

GradedElement sharp(const PoissonStructure& ps, const GradedElement& eta) {
  if (eta.variance() != Variance::form) throw MismatchError("sharp needs a form");
  require_element_of(ps.tangent(), eta, "sharp");
  const unsigned n = ps.dimension();
  std::vector<GradedElement> images;
  images.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    GradedElement v(Variance::multivector, n);
    for (unsigned j = 0; j < n; ++j) v.add(IndexSet::single(j), ps.coefficient(i, j));
    images.push_back(std::move(v));
  }
  GradedElement out(Variance::multivector, n);
  for (const auto& [s, f] : eta.terms()) {
    GradedElement t = GradedElement::scalar(Variance::multivector, n, f);
    for (unsigned i : s.elements()) t = wedge(t, images[i]);
    out += t;
  }
  return out;
}

Algebroid cotangent_algebroid(const PoissonStructure& ps, bool force) {
  if (!ps.verified() && !force) {
    throw VerificationError("cotangent_algebroid: the bivector is not Poisson");
  }
  const unsigned n = ps.dimension();
  std::vector<std::vector<Expr>> anchor(n, std::vector<Expr>(n));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) anchor[i][j] = ps.coefficient(i, j);
  }
  std::vector<StructureEntry> structure;
  for (const auto& [s, lambda] : ps.bivector().terms()) {
    const auto e = s.elements();
    for (unsigned k = 0; k < n; ++k) {
      Expr d = lambda.derivative(k);
      if (!d.is_zero()) structure.push_back({k, e[0], e[1], std::move(d)});
    }
  }
  Algebroid out = Algebroid::create(ps.chart(), n, std::move(anchor), structure);
  return ps.verified() ? certify(out) : out;
}

GradedElement koszul_bracket(const PoissonStructure& ps, const GradedElement& eta,
                             const GradedElement& zeta, bool force) {
  if (eta.variance() != Variance::form || zeta.variance() != Variance::form) {
    throw MismatchError("koszul_bracket needs two forms");
  }
  const Algebroid cotangent = cotangent_algebroid(ps, force);
  return schouten_bracket(cotangent, eta.reinterpreted(Variance::multivector),
                          zeta.reinterpreted(Variance::multivector))
      .reinterpreted(Variance::form);
}

GradedElement lichnerowicz_differential(const PoissonStructure& ps, const GradedElement& p) {
  return schouten_bracket(ps.tangent(), ps.bivector(), p);
}

}  // namespace lac
