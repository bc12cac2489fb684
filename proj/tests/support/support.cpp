#include "support.hpp"

#include <fstream>
#include <sstream>

namespace lac::test {

Algebroid so3() {
  return construct_lie_algebra(3, {{2, 0, 1, 1}, {0, 1, 2, 1}, {1, 0, 2, -1}});
}

Algebroid heisenberg() { return construct_lie_algebra(3, {{2, 0, 1, 1}}); }

Algebroid bad_jacobi() { return construct_lie_algebra(3, {{0, 0, 1, 1}, {1, 0, 2, 1}}); }

namespace {

PoissonStructure from_entries(const Chart& chart,
                              const std::vector<std::pair<std::pair<unsigned, unsigned>, std::string>>& entries) {
  GradedElement b(Variance::multivector, static_cast<unsigned>(chart.size()));
  for (const auto& [ij, text] : entries) b.add(IndexSet::of({ij.first, ij.second}), parse(text, chart));
  return PoissonStructure(chart, b);
}

}  // namespace

PoissonStructure symplectic_r2() { return from_entries(Chart::numbered("x", 2), {{{0, 1}, "1"}}); }

PoissonStructure linear_r3() { return from_entries(Chart::numbered("x", 3), {{{0, 1}, "x3"}}); }

PoissonStructure so3_poisson() {
  return from_entries(Chart::numbered("xi", 3),
                      {{{0, 1}, "xi3"}, {{1, 2}, "xi1"}, {{0, 2}, "-xi2"}});
}

PoissonStructure non_poisson_r3() {
  return from_entries(Chart::numbered("x", 3), {{{0, 1}, "1"}, {{0, 2}, "x1"}});
}

std::vector<NamedPoisson> poisson_fixtures() {
  return {{"symplectic R2", symplectic_r2()},
          {"x3-linear R3", linear_r3()},
          {"so(3) linear", so3_poisson()}};
}

std::vector<NamedAlgebroid> algebroid_fixtures() {
  std::vector<NamedAlgebroid> out{{"tangent(1)", construct_tangent(1)},
                                  {"tangent(2)", construct_tangent(2)},
                                  {"tangent(3)", construct_tangent(3)},
                                  {"so(3)", certify(so3())},
                                  {"Heisenberg", certify(heisenberg())}};
  for (const auto& p : poisson_fixtures()) {
    out.push_back({"cotangent of " + p.name, cotangent_algebroid(p.structure)});
  }
  return out;
}

std::string fixture_path(const std::string& file) {
  return std::string(LAC_TEST_DATA_DIR) + "/fixtures/" + file;
}

std::string golden_path(const std::string& file) {
  return std::string(LAC_TEST_DATA_DIR) + "/golden/" + file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Rational random_rational(Rng& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Expr random_poly(Rng& rng, unsigned variables, unsigned max_degree, unsigned max_terms) {
  std::uniform_int_distribution<unsigned> terms(0, max_terms);
  std::uniform_int_distribution<unsigned> degree(0, max_degree);
  Expr out;
  const unsigned count = terms(rng);
  for (unsigned t = 0; t < count; ++t) {
    Expr term(random_rational(rng));
    if (variables > 0) {
      std::uniform_int_distribution<Var> var(0, variables - 1);
      const unsigned d = degree(rng);
      for (unsigned i = 0; i < d; ++i) term *= Expr::variable(var(rng));
    }
    out += term;
  }
  return out;
}

Section random_section(Rng& rng, const Algebroid& a, unsigned max_degree) {
  Section s(a.rank());
  for (unsigned b = 0; b < a.rank(); ++b) s[b] = random_poly(rng, a.dimension(), max_degree);
  return s;
}

GradedElement random_element(Rng& rng, const Algebroid& a, Variance v, unsigned degree,
                             unsigned max_degree) {
  GradedElement g(v, a.rank());
  for (IndexSet s : index_sets(a.rank(), degree)) g.add(s, random_poly(rng, a.dimension(), max_degree));
  return g;
}

GradedElement random_mixed(Rng& rng, const Algebroid& a, Variance v, unsigned max_degree) {
  GradedElement g(v, a.rank());
  std::bernoulli_distribution keep(0.5);
  for (unsigned d = 0; d <= a.rank(); ++d) {
    if (keep(rng)) g += random_element(rng, a, v, d, max_degree);
  }
  return g;
}

std::map<Var, Rational> random_point(Rng& rng, unsigned variables) {
  std::map<Var, Rational> p;
  for (Var v = 0; v < variables; ++v) p.emplace(v, random_rational(rng, 6));
  return p;
}

std::string show(const GradedElement& g, const Chart& chart) {
  if (g.is_zero()) return "0";
  const auto& [s, c] = *g.terms().begin();
  return tuple_label(s) + " = " + to_string(c, chart) +
         (g.terms().size() > 1 ? " (+" + std::to_string(g.terms().size() - 1) + " more)" : "");
}

}  // namespace lac::test
