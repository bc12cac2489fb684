#include "lac/calculus.hpp"

#include <string>

#include "lac/errors.hpp"

namespace lac {
namespace {

constexpr int parity_sign(long n) { return (n % 2 == 0) ? 1 : -1; }

void add_signed(Expr& target, int sign, const Expr& value) {
  if (sign > 0) {
    target += value;
  } else {
    target -= value;
  }
}

void require_form(const Algebroid& a, const GradedElement& eta, const char* context) {
  if (eta.variance() != Variance::form) throw MismatchError(std::string(context) + ": expected a form");
  require_element_of(a, eta, context);
}

void require_multivector(const Algebroid& a, const GradedElement& p, const char* context) {
  if (p.variance() != Variance::multivector) {
    throw MismatchError(std::string(context) + ": expected a multivector");
  }
  require_element_of(a, p, context);
}

std::string describe(const GradedElement& g, const Chart& chart) {
  if (g.is_zero()) return "0";
  std::string out;
  for (const auto& [s, c] : g.terms()) {
    if (!out.empty()) out += "; ";
    out += tuple_label(s) + " = " + to_string(c, chart);
  }
  return out;
}

GradedElement form_basis(unsigned k, IndexSet s, Expr c = 1) {
  return GradedElement::basis(Variance::form, k, s, std::move(c));
}

GradedElement zero_form(unsigned k) { return GradedElement(Variance::form, k); }

// ---------------------------------------------------------------------------
// Oracle recursion on wedge monomials f e_I.

GradedElement multivector_term(unsigned k, IndexSet s, const Expr& c) {
  return GradedElement::basis(Variance::multivector, k, s, c);
}

// [g, f e_I] for a function g: f Σ_m (−1)^m (−ρ(e_{i_m}) g) e_{I \ i_m}.
GradedElement oracle_function_left(const Algebroid& a, const Expr& g, const Expr& f, IndexSet s) {
  GradedElement out(Variance::multivector, a.rank());
  const auto elems = s.elements();
  for (std::size_t m = 0; m < elems.size(); ++m) {
    Expr c = -(a.anchor_action(elems[m], g) * f);
    if (m % 2 == 1) c = -c;
    out.add(s.without(elems[m]), c);
  }
  return out;
}

// [e_j, f e_I] = (ρ(e_j) f) e_I + f Σ_m e_{i_1} ∧ ... ∧ {e_j, e_{i_m}} ∧ ... ∧ e_{i_p}.
GradedElement oracle_basis_left(const Algebroid& a, unsigned j, const Expr& f, IndexSet s) {
  GradedElement out(Variance::multivector, a.rank());
  out.add(s, a.anchor_action(j, f));
  std::vector<unsigned> elems = s.elements();
  for (std::size_t m = 0; m < elems.size(); ++m) {
    const unsigned im = elems[m];
    for (unsigned c = 0; c < a.rank(); ++c) {
      const Expr cc = a.structure(c, j, im);
      if (cc.is_zero()) continue;
      elems[m] = c;
      const int sign = ordering_sign(elems);
      elems[m] = im;
      if (sign == 0) continue;
      Expr t = f * cc;
      out.add(s.without(im).with(c), sign > 0 ? t : -t);
    }
  }
  return out;
}

// [f e_I, e_J] by the derivation rule in the second slot.
GradedElement oracle_wedge_right(const Algebroid& a, const Expr& f, IndexSet s, IndexSet t) {
  const unsigned k = a.rank();
  if (t.empty()) return GradedElement(Variance::multivector, k);
  const auto elems = t.elements();
  const unsigned j1 = elems.front();
  const GradedElement head = -oracle_basis_left(a, j1, f, s);
  if (elems.size() == 1) return head;
  const IndexSet rest = t.without(j1);
  GradedElement out = wedge(head, multivector_term(k, rest, 1));
  GradedElement tail = wedge(multivector_term(k, IndexSet::single(j1), 1),
                             oracle_wedge_right(a, f, s, rest));
  if ((s.degree() - 1) % 2 == 1) tail = -tail;
  out += tail;
  return out;
}

GradedElement oracle_terms(const Algebroid& a, const Expr& f, IndexSet s, const Expr& g,
                           IndexSet t) {
  const unsigned k = a.rank();
  if (s.empty()) {
    if (t.empty()) return GradedElement(Variance::multivector, k);
    return oracle_function_left(a, f, g, t);
  }
  // [P, g] = (−1)^p [g, P].
  GradedElement pg = oracle_function_left(a, g, f, s);
  if (s.degree() % 2 == 1) pg = -pg;
  // [P, g e_J] = [P, g] ∧ e_J + g [P, e_J].
  GradedElement out = wedge(pg, multivector_term(k, t, 1));
  out += g * oracle_wedge_right(a, f, s, t);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Operators

FormOperator compose(FormOperator f, FormOperator g) {
  std::optional<int> degree;
  if (f.degree && g.degree) degree = *f.degree + *g.degree;
  return {[f = std::move(f.apply), g = std::move(g.apply)](const GradedElement& eta) {
            return f(g(eta));
          },
          degree};
}

FormOperator operator+(FormOperator f, FormOperator g) {
  std::optional<int> degree = f.degree == g.degree ? f.degree : std::nullopt;
  return {[f = std::move(f.apply), g = std::move(g.apply)](const GradedElement& eta) {
            return f(eta) + g(eta);
          },
          degree};
}

FormOperator operator-(FormOperator f, FormOperator g) {
  std::optional<int> degree = f.degree == g.degree ? f.degree : std::nullopt;
  return {[f = std::move(f.apply), g = std::move(g.apply)](const GradedElement& eta) {
            return f(eta) - g(eta);
          },
          degree};
}

FormOperator graded_bracket(const FormOperator& f, const FormOperator& g) {
  if (!f.degree || !g.degree) throw MismatchError("graded bracket of inhomogeneous operators");
  const int sign = parity_sign(static_cast<long>(*f.degree) * *g.degree);
  return {[f = f.apply, g = g.apply, sign](const GradedElement& eta) {
            GradedElement fg = f(g(eta));
            GradedElement gf = g(f(eta));
            return sign > 0 ? fg - gf : fg + gf;
          },
          *f.degree + *g.degree};
}

FormOperator interior_operator(const GradedElement& p) {
  if (p.variance() != Variance::multivector) {
    throw MismatchError("interior product needs a multivector");
  }
  std::optional<int> degree = 0;
  if (!p.is_zero()) {
    const auto d = p.pure_degree();
    degree = d ? std::optional<int>(-static_cast<int>(*d)) : std::nullopt;
  }
  return {[p](const GradedElement& eta) { return interior_product(p, eta); }, degree};
}

FormOperator exterior_derivative_operator(const Algebroid& a) {
  return {[a](const GradedElement& eta) { return exterior_derivative(a, eta); }, 1};
}

FormOperator lie_operator(const Algebroid& a, const GradedElement& p) {
  require_multivector(a, p, "lie_operator");
  const FormOperator d = exterior_derivative_operator(a);
  std::optional<FormOperator> total;
  for (unsigned deg : p.degrees()) {
    FormOperator piece = graded_bracket(interior_operator(p.component(deg)), d);
    total = total ? *total + piece : piece;
  }
  if (!total) {
    const unsigned k = a.rank();
    return {[k](const GradedElement&) { return zero_form(k); }, 0};
  }
  return *total;
}

// ---------------------------------------------------------------------------
// Exterior derivative

GradedElement exterior_derivative(const Algebroid& a, const GradedElement& eta) {
  require_form(a, eta, "exterior_derivative");
  const unsigned k = a.rank();
  GradedElement out(Variance::form, k);
  for (unsigned p : eta.degrees()) {
    if (p + 1 > k) continue;
    for (IndexSet j : index_sets(k, p + 1)) {
      const auto elems = j.elements();
      Expr coef;
      for (unsigned i = 0; i <= p; ++i) {
        const Expr& f = eta.coefficient(j.without(elems[i]));
        if (f.is_zero()) continue;
        add_signed(coef, parity_sign(i), a.anchor_action(elems[i], f));
      }
      for (unsigned i = 0; i <= p; ++i) {
        for (unsigned l = i + 1; l <= p; ++l) {
          const IndexSet rest = j.without(elems[i]).without(elems[l]);
          for (unsigned c = 0; c < k; ++c) {
            if (rest.contains(c)) continue;
            const Expr& value = eta.coefficient(rest.with(c));
            if (value.is_zero()) continue;
            const Expr cc = a.structure(c, elems[i], elems[l]);
            if (cc.is_zero()) continue;
            // η(e_c, rest) = (−1)^{#rest below c} η_{rest ∪ c}.
            const int sign = parity_sign(static_cast<long>(i + l + rest.rank_of(c)));
            add_signed(coef, sign, cc * value);
          }
        }
      }
      out.add(j, coef);
    }
  }
  return out;
}

GradedElement exterior_derivative_via_lie(const Algebroid& a, const GradedElement& eta) {
  require_form(a, eta, "exterior_derivative");
  const unsigned k = a.rank();
  GradedElement out(Variance::form, k);
  for (unsigned p : eta.degrees()) {
    if (p + 1 > k) continue;
    const GradedElement piece = eta.component(p);
    std::vector<GradedElement> lie;
    lie.reserve(k);
    for (unsigned b = 0; b < k; ++b) lie.push_back(lie_derivative_form(a, Section::basis(k, b), piece));
    for (IndexSet j : index_sets(k, p + 1)) {
      const auto elems = j.elements();
      Expr coef;
      for (unsigned i = 0; i <= p; ++i) {
        add_signed(coef, parity_sign(i), lie[elems[i]].coefficient(j.without(elems[i])));
      }
      for (unsigned i = 0; i <= p; ++i) {
        for (unsigned l = i + 1; l <= p; ++l) {
          std::vector<Section> args{bracket_basis(a, elems[i], elems[l])};
          for (unsigned m = 0; m <= p; ++m) {
            if (m != i && m != l) args.push_back(Section::basis(k, elems[m]));
          }
          add_signed(coef, -parity_sign(i + l), evaluate_form(piece, args));
        }
      }
      out.add(j, coef);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lie derivatives

GradedElement lie_derivative_form(const Algebroid& a, const Section& v, const GradedElement& eta) {
  require_form(a, eta, "lie_derivative");
  require_section_of(a, v, "lie_derivative");
  const unsigned k = a.rank();
  std::vector<Section> brackets;
  brackets.reserve(k);
  for (unsigned b = 0; b < k; ++b) brackets.push_back(bracket_sections(a, v, Section::basis(k, b)));
  GradedElement out(Variance::form, k);
  for (unsigned p : eta.degrees()) {
    const GradedElement piece = eta.component(p);
    for (IndexSet s : index_sets(k, p)) {
      Expr coef = a.anchor_action(v, piece.coefficient(s));
      const auto elems = s.elements();
      std::vector<Section> args;
      args.reserve(p);
      for (unsigned b : elems) args.push_back(Section::basis(k, b));
      for (unsigned m = 0; m < p; ++m) {
        if (brackets[elems[m]].is_zero()) continue;
        args[m] = brackets[elems[m]];
        coef -= evaluate_form(piece, args);
        args[m] = Section::basis(k, elems[m]);
      }
      out.add(s, coef);
    }
  }
  return out;
}

GradedElement lie_derivative_multivector(const Algebroid& a, const Section& v,
                                         const GradedElement& p) {
  require_multivector(a, p, "lie_derivative");
  require_section_of(a, v, "lie_derivative");
  const unsigned k = a.rank();
  GradedElement out(Variance::multivector, k);
  for (unsigned deg : p.degrees()) {
    const GradedElement piece = p.component(deg);
    for (IndexSet s : index_sets(k, deg)) {
      Expr coef = a.anchor_action(v, piece.coefficient(s));
      coef -= pairing(lie_derivative_form(a, v, form_basis(k, s)), piece);
      out.add(s, coef);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schouten-Nijenhuis bracket

GradedElement schouten_bracket(const Algebroid& a, const GradedElement& p, const GradedElement& q) {
  require_multivector(a, p, "schouten_bracket");
  require_multivector(a, q, "schouten_bracket");
  const unsigned k = a.rank();
  GradedElement out(Variance::multivector, k);
  for (unsigned dp : p.degrees()) {
    for (unsigned dq : q.degrees()) {
      if (dp + dq == 0 || dp + dq - 1 > k) continue;
      const unsigned r = dp + dq - 1;
      const FormOperator op =
          graded_bracket(lie_operator(a, p.component(dp)), interior_operator(q.component(dq)));
      // i(e_I) e^I = (−1)^{r(r−1)/2}.
      const int sign = parity_sign(static_cast<long>(r) * (r - 1) / 2);
      for (IndexSet s : index_sets(k, r)) {
        const GradedElement value = op(form_basis(k, s));
        Expr c = value.coefficient(IndexSet{});
        out.add(s, sign > 0 ? c : -c);
      }
    }
  }
  return out;
}

GradedElement schouten_oracle(const Algebroid& a, const GradedElement& p, const GradedElement& q) {
  require_multivector(a, p, "schouten_oracle");
  require_multivector(a, q, "schouten_oracle");
  GradedElement out(Variance::multivector, a.rank());
  for (const auto& [s, f] : p.terms()) {
    for (const auto& [t, g] : q.terms()) out += oracle_terms(a, f, s, g, t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction from a square-zero derivation

Algebroid delta_reconstruct(const Chart& chart, unsigned rank, const FormOperator& delta) {
  const unsigned n = static_cast<unsigned>(chart.size());
  const unsigned k = rank;
  auto fn = [&](const Expr& f) { return GradedElement::scalar(Variance::form, k, f); };
  auto coordinate = [&](unsigned i) { return Expr::variable(i); };
  auto reject = [&](const std::string& what, const GradedElement& residual) {
    throw VerificationError("delta_reconstruct: " + what + " has residual " +
                            describe(residual, chart));
  };
  auto expect_degree = [&](const GradedElement& g, unsigned degree, const std::string& what) {
    if (g.component(degree) != g) reject(what + " is not homogeneous of degree 1", g);
  };

  if (const GradedElement d1 = delta(fn(1)); !d1.is_zero()) reject("delta(1)", d1);

  std::vector<GradedElement> dx;
  for (unsigned i = 0; i < n; ++i) {
    dx.push_back(delta(fn(coordinate(i))));
    expect_degree(dx.back(), 1, "delta(" + chart.name(i) + ")");
    if (const GradedElement sq = delta(dx.back()); !sq.is_zero()) {
      reject("delta^2(" + chart.name(i) + ")", sq);
    }
  }
  std::vector<GradedElement> de;
  for (unsigned b = 0; b < k; ++b) {
    de.push_back(delta(form_basis(k, IndexSet::single(b))));
    expect_degree(de.back(), 2, "delta(e^" + std::to_string(b + 1) + ")");
    if (const GradedElement sq = delta(de.back()); !sq.is_zero()) {
      reject("delta^2(e^" + std::to_string(b + 1) + ")", sq);
    }
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i; j < n; ++j) {
      GradedElement r = delta(fn(coordinate(i) * coordinate(j))) - coordinate(j) * dx[i] -
                        coordinate(i) * dx[j];
      if (!r.is_zero()) reject("the Leibniz rule on " + chart.name(i) + "*" + chart.name(j), r);
    }
    for (unsigned b = 0; b < k; ++b) {
      const GradedElement eb = form_basis(k, IndexSet::single(b));
      GradedElement r = delta(form_basis(k, IndexSet::single(b), coordinate(i))) -
                        wedge(dx[i], eb) - coordinate(i) * de[b];
      if (!r.is_zero()) {
        reject("the Leibniz rule on " + chart.name(i) + "*e^" + std::to_string(b + 1), r);
      }
    }
  }

  std::vector<std::vector<Expr>> anchor(k, std::vector<Expr>(n));
  for (unsigned b = 0; b < k; ++b) {
    for (unsigned i = 0; i < n; ++i) anchor[b][i] = dx[i].coefficient(IndexSet::single(b));
  }
  std::vector<StructureEntry> structure;
  for (unsigned x = 0; x < k; ++x) {
    const FormOperator lx = graded_bracket(
        interior_operator(GradedElement::basis(Variance::multivector, k, IndexSet::single(x))),
        delta);
    for (unsigned y = x + 1; y < k; ++y) {
      const FormOperator op = graded_bracket(
          lx, interior_operator(GradedElement::basis(Variance::multivector, k, IndexSet::single(y))));
      for (unsigned c = 0; c < k; ++c) {
        const GradedElement value = op(form_basis(k, IndexSet::single(c)));
        expect_degree(value, 0, "the delta-bracket");
        Expr cc = value.coefficient(IndexSet{});
        if (!cc.is_zero()) structure.push_back({c, x, y, std::move(cc)});
      }
    }
  }
  Algebroid rebuilt = certify(Algebroid::create(chart, k, std::move(anchor), structure));

  for (unsigned i = 0; i < n; ++i) {
    GradedElement r = exterior_derivative(rebuilt, fn(coordinate(i))) - dx[i];
    if (!r.is_zero()) reject("the rebuilt derivative on " + chart.name(i), r);
  }
  for (unsigned b = 0; b < k; ++b) {
    GradedElement r = exterior_derivative(rebuilt, form_basis(k, IndexSet::single(b))) - de[b];
    if (!r.is_zero()) reject("the rebuilt derivative on e^" + std::to_string(b + 1), r);
  }
  return rebuilt;
}

}  // namespace lac
