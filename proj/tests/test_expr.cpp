#include <doctest.h>

#include "lac/errors.hpp"
#include "lac/expr.hpp"
#include "support/support.hpp"

using namespace lac;
using lac::test::random_point;
using lac::test::random_poly;
using lac::test::random_rational;
using lac::test::Rng;

namespace {

const Chart xy = Chart::numbered("x", 3);

Expr p(const char* text) { return parse(text, xy); }

}  // namespace

TEST_CASE("parse builds canonical tables") {
  CHECK(p("0").is_zero());
  CHECK(p("x1*x1") == Expr::term(1, Monomial::variable(0, 2)));
  CHECK(to_string(p("(x1+x2)^2"), xy) == "x1^2 + 2*x1*x2 + x2^2");
  CHECK(to_string(p("-x2 + 1/2*x1 - 3"), xy) == "1/2*x1 - x2 - 3");
  CHECK(to_string(p("2/4*x3^0"), xy) == "1/2");
  CHECK(p("-x1^2") == -p("x1^2"));
  CHECK(p("x1 - -x2") == p("x1 + x2"));
  CHECK(p("  x1 +\tx2 ") == p("x2+x1"));
}

TEST_CASE("parse reports errors") {
  CHECK_THROWS_AS(p("x1 +"), ParseError);
  CHECK_THROWS_AS(p("x1 x2"), ParseError);
  CHECK_THROWS_AS(p("(x1"), ParseError);
  CHECK_THROWS_AS(p("- - x1"), ParseError);
  CHECK_THROWS_AS(p("x1 * -x2"), ParseError);
  CHECK_THROWS_AS(p("1/0"), ParseError);
  CHECK_THROWS_AS(p("x1^99999999999"), ParseError);
  try {
    p("x1 + )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  try {
    p("x1 + y");
    FAIL("expected an unknown variable");
  } catch (const UnknownVariableError& e) {
    CHECK(e.name() == "y");
    CHECK(e.position() == 5);
  }
}

TEST_CASE("exponent overflow is an error") {
  const Expr big = Expr::term(1, Monomial::variable(0, 4000000000U));
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("arithmetic") {
  CHECK((p("x1") + p("-x1")).is_zero());
  CHECK(p("x1") * p("x2") == p("x1*x2"));
  CHECK(Expr(2).scale(Rational(1, 2)) == Expr(1));
  CHECK(is_zero(p("x1*x2") - p("x2*x1")));
  CHECK(!is_zero(p("x1^2")));
  Expr e = p("x1");
  e += e;
  CHECK(e == p("2*x1"));
  e -= e;
  CHECK(e.is_zero());
}

TEST_CASE("differentiate") {
  CHECK(differentiate(p("x1^2*x2"), xy, "x1") == p("2*x1*x2"));
  CHECK(differentiate(p("x1"), xy, "x2").is_zero());
  CHECK(differentiate(p("x1+3"), xy, "x1") == Expr(1));
  CHECK_THROWS_AS(differentiate(p("x1"), xy, "y"), UnknownVariableError);
}

TEST_CASE("eval_at") {
  CHECK(eval_at(p("x1^2"), xy, {{"x1", Rational(3, 2)}}) == Rational(9, 4));
  CHECK(eval_at(Expr(), xy, {}) == 0);
  CHECK(eval_at(p("x1+x2"), xy, {{"x1", 1}, {"x2", -1}}) == 0);
  CHECK_THROWS_AS(eval_at(p("x1*x2"), xy, {{"x1", 1}}), Error);
}

TEST_CASE("printing round-trips through the parser") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr f = random_poly(rng, 3, 4, 6);
    CHECK(parse(to_string(f, xy), xy) == f);
  }
}

TEST_CASE("factored and expanded forms agree") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr a = random_poly(rng, 3, 2);
    const Expr b = random_poly(rng, 3, 2);
    const Expr c = random_poly(rng, 3, 2);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b).pow(2) == a * a + Expr(2) * a * b + b * b);
    const std::string factored = "(" + to_string(a, xy) + ")*(" + to_string(b, xy) + ")";
    CHECK(parse(factored, xy) == a * b);
  }
}

TEST_CASE("the partial derivative is a derivation and partials commute") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr f = random_poly(rng, 3, 4, 4);
    const Expr g = random_poly(rng, 3, 4, 4);
    for (Var v = 0; v < 3; ++v) {
      CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
      for (Var w = 0; w < 3; ++w) CHECK(f.derivative(v).derivative(w) == f.derivative(w).derivative(v));
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng rng(14);
  const Expr f = random_poly(rng, 3, 3, 5);
  const Expr g = random_poly(rng, 3, 3, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto point = random_point(rng, 3);
    CHECK((f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point));
    CHECK((f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point));
  }
}

TEST_CASE("substitution composes polynomials") {
  const std::vector<Expr> images{p("x2+1"), p("x1*x3"), p("2")};
  CHECK(p("x1*x2 + x3").substitute(images) == p("x1*x2*x3 + x1*x3 + 2"));
  CHECK_THROWS_AS(p("x3").substitute(std::span<const Expr>(images.data(), 2)), ShapeError);
}

TEST_CASE("charts") {
  CHECK_THROWS_AS(Chart({"x", "x"}), Error);
  CHECK_THROWS_AS(Chart({"1x"}), Error);
  CHECK(Chart::numbered("xi", 2).extended(Chart({"t"})).names() ==
        std::vector<std::string>{"xi1", "xi2", "t"});
}

TEST_CASE("random rationals are canonical") {
  Rng rng(15);
  for (int i = 0; i < 50; ++i) {
    const Rational q = random_rational(rng);
    CHECK(gcd(q.get_num(), q.get_den()) == 1);
  }
}
