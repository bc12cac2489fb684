#pragma once

// Cartan calculus of a Lie algebroid: exterior derivative, Lie derivatives,
// graded operators on forms, and the Schouten-Nijenhuis bracket.

#include <functional>
#include <optional>

#include "lac/algebroid.hpp"
#include "lac/graded.hpp"

namespace lac {

/// A linear endomorphism of the form algebra. `degree` is set when the
/// operator is homogeneous.
struct FormOperator {
  std::function<GradedElement(const GradedElement&)> apply;
  std::optional<int> degree;

  GradedElement operator()(const GradedElement& eta) const { return apply(eta); }
};

FormOperator compose(FormOperator f, FormOperator g);
FormOperator operator+(FormOperator f, FormOperator g);
FormOperator operator-(FormOperator f, FormOperator g);
/// f∘g − (−1)^{deg f · deg g} g∘f. Throws MismatchError if either operator
/// is not homogeneous.
FormOperator graded_bracket(const FormOperator& f, const FormOperator& g);

GradedElement exterior_derivative(const Algebroid& a, const GradedElement& eta);
/// The same operator written with Lie derivatives of η instead of anchor
/// actions on its coefficients.
GradedElement exterior_derivative_via_lie(const Algebroid& a, const GradedElement& eta);

GradedElement lie_derivative_form(const Algebroid& a, const Section& v, const GradedElement& eta);
GradedElement lie_derivative_multivector(const Algebroid& a, const Section& v,
                                         const GradedElement& p);

FormOperator interior_operator(const GradedElement& p);
FormOperator exterior_derivative_operator(const Algebroid& a);
/// L(P) = [i(P), d], summed over the homogeneous components of P.
FormOperator lie_operator(const Algebroid& a, const GradedElement& p);

/// Coefficients read off [[i(P), d], i(Q)] applied to the basis forms.
GradedElement schouten_bracket(const Algebroid& a, const GradedElement& p, const GradedElement& q);
/// Recursion on wedge monomials through the derivation rules of the bracket.
GradedElement schouten_oracle(const Algebroid& a, const GradedElement& p, const GradedElement& q);

/// Rebuilds the algebroid whose exterior derivative is `delta`. Throws
/// VerificationError if a probe shows `delta` is not a square-zero
/// derivation, or if the rebuilt structure does not reproduce it.
Algebroid delta_reconstruct(const Chart& chart, unsigned rank, const FormOperator& delta);

}  // namespace lac
