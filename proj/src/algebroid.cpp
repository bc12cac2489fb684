#include "lac/algebroid.hpp"

#include <set>
#include <string>
#include <tuple>

#include "lac/errors.hpp"

namespace lac {
namespace {

std::string label(unsigned c, unsigned a, unsigned b) {
  return "C[" + std::to_string(c + 1) + "][" + std::to_string(a + 1) + "][" +
         std::to_string(b + 1) + "]";
}

Expr apply_field(const std::vector<Expr>& x, const Expr& f) {
  Expr out;
  for (Var i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Expr df = f.derivative(i);
    if (!df.is_zero()) out += x[i] * df;
  }
  return out;
}

}  // namespace

Algebroid Algebroid::create(Chart chart, unsigned rank, std::vector<std::vector<Expr>> anchor,
                            const std::vector<StructureEntry>& structure) {
  if (rank > IndexSet::kMaxRank) throw ShapeError("rank " + std::to_string(rank) + " too large");
  const std::size_t n = chart.size();
  if (anchor.size() != rank) {
    throw ShapeError("anchor has " + std::to_string(anchor.size()) + " rows, expected rank " +
                     std::to_string(rank));
  }
  for (unsigned a = 0; a < rank; ++a) {
    if (anchor[a].size() != n) {
      throw ShapeError("anchor row " + std::to_string(a + 1) + " has " +
                       std::to_string(anchor[a].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (unsigned i = 0; i < n; ++i) {
      require_within(anchor[a][i], n,
                     "anchor[" + std::to_string(a + 1) + "][" + std::to_string(i + 1) + "]");
    }
  }

  Algebroid out;
  out.chart_ = std::move(chart);
  out.rank_ = rank;
  out.anchor_ = std::move(anchor);
  out.structure_.assign(std::size_t{rank} * rank * rank, Expr{});
  std::set<std::tuple<unsigned, unsigned, unsigned>> seen;
  for (const auto& e : structure) {
    if (e.a >= rank || e.b >= rank || e.c >= rank) {
      throw ShapeError(label(e.c, e.a, e.b) + ": index out of range for rank " +
                       std::to_string(rank));
    }
    if (e.a >= e.b) throw ShapeError(label(e.c, e.a, e.b) + ": requires a < b");
    if (!seen.emplace(e.c, e.a, e.b).second) throw ShapeError(label(e.c, e.a, e.b) + ": repeated");
    require_within(e.value, n, label(e.c, e.a, e.b));
    out.structure_[(std::size_t{e.a} * rank + e.b) * rank + e.c] = e.value;
    out.structure_[(std::size_t{e.b} * rank + e.a) * rank + e.c] = -e.value;
  }
  return out;
}

Expr Algebroid::structure(unsigned c, unsigned a, unsigned b) const {
  return structure_.at((std::size_t{a} * rank_ + b) * rank_ + c);
}

std::vector<StructureEntry> Algebroid::structure_entries() const {
  std::vector<StructureEntry> out;
  for (unsigned a = 0; a < rank_; ++a) {
    for (unsigned b = a + 1; b < rank_; ++b) {
      for (unsigned c = 0; c < rank_; ++c) {
        const Expr& v = structure_[(std::size_t{a} * rank_ + b) * rank_ + c];
        if (!v.is_zero()) out.push_back({c, a, b, v});
      }
    }
  }
  return out;
}

Expr Algebroid::anchor_action(unsigned a, const Expr& f) const {
  return apply_field(anchor_[a], f);
}

Expr Algebroid::anchor_action(const Section& s, const Expr& f) const {
  require_section_of(*this, s, "anchor action");
  Expr out;
  for (unsigned a = 0; a < rank_; ++a) {
    if (s[a].is_zero()) continue;
    out += s[a] * anchor_action(a, f);
  }
  return out;
}

bool operator==(const Algebroid& x, const Algebroid& y) {
  return x.chart_ == y.chart_ && x.rank_ == y.rank_ && x.anchor_ == y.anchor_ &&
         x.structure_ == y.structure_;
}

Algebroid construct_tangent(unsigned n) { return construct_tangent(Chart::numbered("x", n)); }

Algebroid construct_tangent(const Chart& chart) {
  const unsigned n = static_cast<unsigned>(chart.size());
  std::vector<std::vector<Expr>> anchor(n, std::vector<Expr>(n));
  for (unsigned a = 0; a < n; ++a) anchor[a][a] = 1;
  Algebroid out = Algebroid::create(chart, n, std::move(anchor), {});
  out.verified_ = true;
  return out;
}

Algebroid construct_lie_algebra(unsigned rank, const std::vector<StructureEntry>& structure,
                                const std::optional<Chart>& base) {
  Chart chart = base.value_or(Chart{});
  std::vector<std::vector<Expr>> anchor(rank, std::vector<Expr>(chart.size()));
  return Algebroid::create(std::move(chart), rank, std::move(anchor), structure);
}

void require_section_of(const Algebroid& a, const Section& s, const char* context) {
  if (s.rank() != a.rank()) {
    throw MismatchError(std::string(context) + ": section of rank " + std::to_string(s.rank()) +
                        " over an algebroid of rank " + std::to_string(a.rank()));
  }
  for (const auto& f : s.components()) require_within(f, a.dimension(), context);
}

void require_element_of(const Algebroid& a, const GradedElement& g, const char* context) {
  if (g.rank() != a.rank()) {
    throw MismatchError(std::string(context) + ": element of rank " + std::to_string(g.rank()) +
                        " over an algebroid of rank " + std::to_string(a.rank()));
  }
  if (g.variable_bound() > a.dimension()) {
    throw ShapeError(std::string(context) + ": coefficient uses a coordinate outside the chart");
  }
}

Section bracket_basis(const Algebroid& a, unsigned i, unsigned j) {
  Section out(a.rank());
  for (unsigned c = 0; c < a.rank(); ++c) out[c] = a.structure(c, i, j);
  return out;
}

Section bracket_sections(const Algebroid& a, const Section& s1, const Section& s2) {
  require_section_of(a, s1, "bracket");
  require_section_of(a, s2, "bracket");
  const unsigned k = a.rank();
  Section out(k);
  for (unsigned i = 0; i < k; ++i) {
    if (s1[i].is_zero()) continue;
    for (unsigned j = 0; j < k; ++j) {
      if (s2[j].is_zero() || i == j) continue;
      const Expr fg = s1[i] * s2[j];
      for (unsigned c = 0; c < k; ++c) {
        const Expr cc = a.structure(c, i, j);
        if (!cc.is_zero()) out[c] += fg * cc;
      }
    }
  }
  for (unsigned c = 0; c < k; ++c) {
    out[c] += a.anchor_action(s1, s2[c]);
    out[c] -= a.anchor_action(s2, s1[c]);
  }
  return out;
}

std::vector<Expr> vector_field_bracket(const std::vector<Expr>& x, const std::vector<Expr>& y) {
  if (x.size() != y.size()) throw MismatchError("vector fields of different dimensions");
  std::vector<Expr> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = apply_field(x, y[i]) - apply_field(y, x[i]);
  return out;
}

GradedElement anchor_push(const Algebroid& a, const GradedElement& p) {
  if (p.variance() != Variance::multivector) throw MismatchError("anchor_push needs a multivector");
  require_element_of(a, p, "anchor_push");
  const unsigned n = a.dimension();
  std::vector<GradedElement> images;
  images.reserve(a.rank());
  for (unsigned b = 0; b < a.rank(); ++b) {
    GradedElement v(Variance::multivector, n);
    for (unsigned i = 0; i < n; ++i) v.add(IndexSet::single(i), a.anchor(b, i));
    images.push_back(std::move(v));
  }
  GradedElement out(Variance::multivector, n);
  for (const auto& [s, f] : p.terms()) {
    GradedElement t = GradedElement::scalar(Variance::multivector, n, f);
    for (unsigned b : s.elements()) t = wedge(t, images[b]);
    out += t;
  }
  return out;
}

AxiomReport verify_axioms(const Algebroid& a) {
  AxiomReport report;
  const unsigned k = a.rank();
  auto push = [&](const Section& s) {
    std::vector<Expr> out(a.dimension());
    for (unsigned b = 0; b < k; ++b) {
      if (s[b].is_zero()) continue;
      for (unsigned i = 0; i < a.dimension(); ++i) out[i] += s[b] * a.anchor(b, i);
    }
    return out;
  };
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = i + 1; j < k; ++j) {
      std::vector<Expr> lhs = push(bracket_basis(a, i, j));
      const std::vector<Expr> rhs = vector_field_bracket(a.anchor_field(i), a.anchor_field(j));
      for (std::size_t c = 0; c < lhs.size(); ++c) {
        lhs[c] -= rhs[c];
        if (!lhs[c].is_zero()) report.passed = false;
      }
      report.anchor_residuals.emplace(std::pair{i, j}, std::move(lhs));
    }
  }
  auto e = [&](unsigned b) { return Section::basis(k, b); };
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = i + 1; j < k; ++j) {
      for (unsigned l = j + 1; l < k; ++l) {
        Section r = bracket_sections(a, bracket_basis(a, i, j), e(l)) +
                    bracket_sections(a, bracket_basis(a, j, l), e(i)) +
                    bracket_sections(a, bracket_basis(a, l, i), e(j));
        if (!r.is_zero()) report.passed = false;
        report.jacobi_residuals.emplace(std::array{i, j, l}, std::move(r));
      }
    }
  }
  return report;
}

Algebroid certify(const Algebroid& a) {
  if (!verify_axioms(a).passed) throw VerificationError("Lie algebroid axioms fail");
  Algebroid out = a;
  out.verified_ = true;
  return out;
}

void require_verified(const Algebroid& a, const char* context) {
  if (!a.verified()) {
    throw VerificationError(std::string(context) + ": the algebroid has not been verified");
  }
}

}  // namespace lac
