#include <doctest.h>

#include "lac/dualpoisson.hpp"
#include "lac/errors.hpp"
#include "support/support.hpp"

using namespace lac;
using namespace lac::test;

namespace {

// Verified algebroids drawn from a few families whose axioms hold for any
// choice of the random data.
Algebroid random_algebroid(Rng& rng) {
  std::uniform_int_distribution<int> family(0, 2);
  switch (family(rng)) {
    case 0: {
      // Cotangent algebroid of a constant bivector on R^3.
      const Algebroid t3 = construct_tangent(3);
      return cotangent_algebroid(PoissonStructure(t3.chart(), random_element(rng, t3, Variance::multivector, 2, 0)));
    }
    case 1: {
      // f(x3) e1^e2 on R^3: x3 is a Casimir, so Jacobi holds for every f.
      const Chart c = Chart::numbered("x", 3);
      Expr f;
      const unsigned top = std::uniform_int_distribution<unsigned>(0, 3)(rng);
      for (unsigned d = 0; d <= top; ++d) f += Expr(random_rational(rng)) * Expr::variable(2).pow(d);
      return cotangent_algebroid(
          PoissonStructure(c, GradedElement::basis(Variance::multivector, 3, IndexSet::of({0, 1}), f)));
    }
    default: {
      // ρ(e1) = ∂x, ρ(e2) = 0, {e1, e2} = f(x) e2.
      const Chart c({"x"});
      const Expr f = random_poly(rng, 1, 3);
      return certify(Algebroid::create(c, 2, {{1}, {0}}, {{1, 0, 1, f}}));
    }
  }
}

Expr var(Var v) { return Expr::variable(v); }

}  // namespace

TEST_CASE("dual charts") {
  const DualChart c = make_dual_chart(Chart::numbered("x", 2), 3);
  CHECK(c.full.names() == std::vector<std::string>{"x1", "x2", "xi1", "xi2", "xi3"});
  CHECK(c.fiber_var(0) == 2);
  CHECK(make_dual_chart(Chart{}, 2, "p").full.names() == std::vector<std::string>{"p1", "p2"});
  CHECK_THROWS_AS(make_dual_chart(Chart({"xi2"}), 2), Error);
  CHECK_NOTHROW(make_dual_chart(Chart({"xi2"}), 1));
}

TEST_CASE("dual of the tangent algebroid is the canonical structure") {
  const DualPoisson d = dual_poisson(construct_tangent(2));
  CHECK(d.structure.verified());
  for (unsigned i = 0; i < 2; ++i) {
    for (unsigned j = 0; j < 2; ++j) {
      CHECK(poisson_bracket(d.structure, var(d.chart.fiber_var(i)), var(j)) == Expr(i == j ? 1 : 0));
      CHECK(poisson_bracket(d.structure, var(i), var(j)).is_zero());
      CHECK(poisson_bracket(d.structure, var(d.chart.fiber_var(i)), var(d.chart.fiber_var(j))).is_zero());
    }
  }
}

TEST_CASE("dual of so(3) is the Lie-Poisson structure") {
  const DualPoisson d = dual_poisson(certify(so3()));
  CHECK(d.structure == so3_poisson());
  CHECK(d.structure.verified());
  CHECK(poisson_bracket(d.structure, var(0), var(1)) == var(2));
  CHECK(poisson_bracket(d.structure, var(1), var(2)) == var(0));
  CHECK(poisson_bracket(d.structure, var(2), var(0)) == var(1));
}

TEST_CASE("dual needs a verified algebroid") {
  CHECK_THROWS_AS(dual_poisson(so3()), VerificationError);
  CHECK_THROWS_AS(dual_poisson(bad_jacobi()), VerificationError);
  const DualPoisson forced = dual_poisson(bad_jacobi(), "xi", true);
  CHECK_FALSE(forced.structure.verified());
  CHECK_FALSE(is_poisson(forced.chart.full, forced.structure.bivector()).passed);
  const Algebroid c = cotangent_algebroid(so3_poisson());
  CHECK_THROWS_AS(dual_poisson(c), Error);
  CHECK(dual_poisson(c, "p").chart.full.size() == 6);
}

TEST_CASE("generator brackets on random algebroids") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const Algebroid a = random_algebroid(rng);
    const DualPoisson d = dual_poisson(a);
    CHECK(d.structure.verified());
    const unsigned n = a.dimension();
    const unsigned k = a.rank();
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) CHECK(poisson_bracket(d.structure, var(i), var(j)).is_zero());
      for (unsigned b = 0; b < k; ++b) {
        CHECK(poisson_bracket(d.structure, var(d.chart.fiber_var(b)), var(i)) == a.anchor(b, i));
      }
    }
    for (unsigned b = 0; b < k; ++b) {
      for (unsigned c = 0; c < k; ++c) {
        Expr expected;
        for (unsigned e = 0; e < k; ++e) expected += a.structure(e, b, c) * var(d.chart.fiber_var(e));
        CHECK(poisson_bracket(d.structure, var(d.chart.fiber_var(b)), var(d.chart.fiber_var(c))) == expected);
      }
    }
  }
}

TEST_CASE("Phi intertwines the brackets") {
  Rng rng(72);
  for (const auto& [name, a] : algebroid_fixtures()) {
    CAPTURE(name);
    const DualPoisson d = dual_poisson(a, a.chart().find("xi1") ? "p" : "xi");
    for (int trial = 0; trial < 10; ++trial) {
      const Section x = random_section(rng, a);
      const Section y = random_section(rng, a);
      const Expr f = random_poly(rng, a.dimension());
      const Expr g = random_poly(rng, a.dimension());
      const auto pb = [&](const Expr& u, const Expr& v) { return poisson_bracket(d.structure, u, v); };
      CHECK(pb(phi(d.chart, x), phi(d.chart, y)) == phi(d.chart, bracket_sections(a, x, y)));
      CHECK(pb(phi(d.chart, x), pullback(d.chart, g)) == pullback(d.chart, a.anchor_action(x, g)));
      CHECK(pb(pullback(d.chart, f), pullback(d.chart, g)).is_zero());
    }
  }
}

TEST_CASE("phi and pullback reject foreign data") {
  const DualChart c = make_dual_chart(Chart::numbered("x", 1), 2);
  CHECK_THROWS_AS(phi(c, Section(3)), MismatchError);
  CHECK_THROWS_AS(phi(c, Section({Expr(1), var(1)})), ShapeError);
  CHECK_THROWS_AS(pullback(c, var(1)), ShapeError);
  CHECK(phi(c, Section({var(0), Expr(2)})) == var(0) * var(1) + Expr(2) * var(2));
}

TEST_CASE("homogeneity") {
  for (const auto& [name, a] : algebroid_fixtures()) {
    CAPTURE(name);
    const DualPoisson d = dual_poisson(a, a.chart().find("xi1") ? "p" : "xi");
    CHECK(homogeneity_residual(d).is_zero());
  }
  // A constant fiber-fiber term has the wrong weight.
  const DualPoisson so = dual_poisson(certify(so3()));
  const auto extra = GradedElement::basis(Variance::multivector, 3, IndexSet::of({0, 1}));
  const DualPoisson corrupted{so.chart, PoissonStructure(so.chart.full, so.structure.bivector() + extra)};
  CHECK(homogeneity_residual(corrupted) == -extra);
  const DualPoisson t = dual_poisson(construct_tangent(2));
  const auto fiber = GradedElement::basis(Variance::multivector, 4, IndexSet::of({2, 3}));
  const DualPoisson bent{t.chart, PoissonStructure(t.chart.full, t.structure.bivector() + fiber)};
  CHECK_FALSE(homogeneity_residual(bent).is_zero());
}

TEST_CASE("transpose of the anchor is a Poisson map") {
  for (const auto& [name, a] : algebroid_fixtures()) {
    CAPTURE(name);
    const DualPoisson d = dual_poisson(a, a.chart().find("xi1") ? "p" : "xi");
    const auto residuals = transpose_anchor_check(a, d, a.chart().find("zeta1") ? "q" : "zeta");
    const std::size_t generators = a.dimension() + a.rank();
    CHECK(residuals.size() == generators * (generators - 1) / 2);
    for (const auto& r : residuals) {
      CAPTURE(r.left);
      CAPTURE(r.right);
      CHECK(r.value.is_zero());
    }
  }
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Algebroid a = random_algebroid(rng);
    for (const auto& r : transpose_anchor_check(a, dual_poisson(a))) CHECK(r.value.is_zero());
  }
}

TEST_CASE("transpose check on the symplectic plane is nontrivial") {
  const Algebroid c = cotangent_algebroid(symplectic_r2());
  const DualPoisson d = dual_poisson(c);
  const auto residuals = transpose_anchor_check(c, d);
  REQUIRE(residuals.size() == 6);
  CHECK(residuals.front().left == "x1");
  CHECK(residuals.front().right == "x2");
  for (const auto& r : residuals) CHECK(r.value.is_zero());
}

TEST_CASE("transpose check rejects a foreign dual") {
  const Algebroid t2 = construct_tangent(2);
  const Algebroid c = cotangent_algebroid(symplectic_r2());
  CHECK_THROWS_AS(transpose_anchor_check(t2, dual_poisson(c)), MismatchError);
  CHECK_THROWS_AS(transpose_anchor_check(construct_tangent(3), dual_poisson(t2)), MismatchError);
}

TEST_CASE("a broken anchor shows up in the transpose check") {
  // ρ(e1) = ∂x and ρ(e2) = ∂x with {e1, e2} = x e2 violates the anchor axiom.
  const Algebroid broken = Algebroid::create(Chart({"x"}), 2, {{1}, {1}}, {{1, 0, 1, var(0)}});
  const DualPoisson d = dual_poisson(broken, "xi", true);
  bool any = false;
  for (const auto& r : transpose_anchor_check(broken, d)) any = any || !r.value.is_zero();
  CHECK(any);
}
