#pragma once

// Shared fixtures and random generators for the test programs.

#include <random>
#include <string>
#include <vector>

#include "lac/algebroid.hpp"
#include "lac/calculus.hpp"
#include "lac/dualpoisson.hpp"
#include "lac/poisson.hpp"

namespace lac::test {

using Rng = std::mt19937_64;

struct NamedAlgebroid {
  std::string name;
  Algebroid algebroid;
};

struct NamedPoisson {
  std::string name;
  PoissonStructure structure;
};

Algebroid so3();
Algebroid heisenberg();
/// {e1,e2} = e1, {e1,e3} = e2: the Jacobi sum on (1,2,3) is e2.
Algebroid bad_jacobi();

PoissonStructure symplectic_r2();
PoissonStructure linear_r3();
/// Chart xi1..xi3, {xi1,xi2} = xi3 and cyclic.
PoissonStructure so3_poisson();
/// e1^e2 + x1 e1^e3 on R^3.
PoissonStructure non_poisson_r3();

std::vector<NamedPoisson> poisson_fixtures();
/// tangent(1..3), so(3), Heisenberg, and the cotangent algebroids of the
/// Poisson fixtures.
std::vector<NamedAlgebroid> algebroid_fixtures();

std::string fixture_path(const std::string& file);
std::string golden_path(const std::string& file);
std::string read_file(const std::string& path);

// Random data. Coefficients are small rationals, polynomials have total
// degree at most `max_degree`.
Rational random_rational(Rng& rng, int bound = 4);
Expr random_poly(Rng& rng, unsigned variables, unsigned max_degree = 2, unsigned max_terms = 3);
Section random_section(Rng& rng, const Algebroid& a, unsigned max_degree = 2);
GradedElement random_element(Rng& rng, const Algebroid& a, Variance v, unsigned degree,
                             unsigned max_degree = 2);
/// Random components in a random nonempty subset of degrees 0..rank.
GradedElement random_mixed(Rng& rng, const Algebroid& a, Variance v, unsigned max_degree = 2);
std::map<Var, Rational> random_point(Rng& rng, unsigned variables);

/// The first nonzero term, for failure messages.
std::string show(const GradedElement& g, const Chart& chart);

}  // namespace lac::test
