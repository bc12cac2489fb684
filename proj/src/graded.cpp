#include "lac/graded.hpp"

#include <algorithm>

#include "lac/errors.hpp"

namespace lac {
namespace {

const Expr& zero_expr() {
  static const Expr zero;
  return zero;
}

void require_same_rank(unsigned a, unsigned b, const char* op) {
  if (a != b) {
    throw MismatchError(std::string(op) + ": rank " + std::to_string(a) + " vs rank " +
                        std::to_string(b));
  }
}

// Sign of e_I ^ e_J against e_{I∪J}; 0 when the tuples overlap.
int shuffle_sign(IndexSet i, IndexSet j) {
  if ((i.bits() & j.bits()) != 0) return 0;
  unsigned inversions = 0;
  for (unsigned b : j.elements()) inversions += i.degree() - i.rank_of(b);
  return (inversions % 2 == 0) ? 1 : -1;
}

// i(e_A) e^B, applying the factors of A from the right. Returns the sign and
// B \ A, sign 0 when A is not contained in B.
std::pair<int, IndexSet> contract(IndexSet a, IndexSet b) {
  if ((a.bits() & ~b.bits()) != 0) return {0, IndexSet{}};
  int sign = 1;
  IndexSet rest = b;
  const auto elems = a.elements();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    if (rest.rank_of(*it) % 2 == 1) sign = -sign;
    rest = rest.without(*it);
  }
  return {sign, rest};
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexSet

IndexSet IndexSet::of(std::span<const unsigned> indices) {
  std::uint64_t bits = 0;
  for (unsigned a : indices) {
    if (a >= kMaxRank) throw ShapeError("frame index " + std::to_string(a + 1) + " out of range");
    const std::uint64_t bit = std::uint64_t{1} << a;
    if (bits & bit) throw ShapeError("repeated frame index " + std::to_string(a + 1));
    bits |= bit;
  }
  return IndexSet(bits);
}

IndexSet IndexSet::of(std::initializer_list<unsigned> indices) {
  return of(std::span<const unsigned>(indices.begin(), indices.size()));
}

std::vector<unsigned> IndexSet::elements() const {
  std::vector<unsigned> out;
  out.reserve(degree());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<unsigned>(std::countr_zero(b)));
  }
  return out;
}

std::vector<IndexSet> index_sets(unsigned rank, unsigned degree) {
  std::vector<IndexSet> out;
  if (degree > rank) return out;
  // Enumerate in lexicographic order of increasing tuples.
  std::vector<unsigned> t(degree);
  for (unsigned i = 0; i < degree; ++i) t[i] = i;
  while (true) {
    out.push_back(IndexSet::of(t));
    int pos = static_cast<int>(degree) - 1;
    while (pos >= 0 && t[pos] == rank - degree + static_cast<unsigned>(pos)) --pos;
    if (pos < 0) break;
    ++t[pos];
    for (unsigned i = static_cast<unsigned>(pos) + 1; i < degree; ++i) t[i] = t[i - 1] + 1;
  }
  return out;
}

std::string tuple_label(IndexSet s) {
  if (s.empty()) return "scalar";
  std::string out;
  for (unsigned a : s.elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(a + 1);
  }
  return out;
}

const char* to_string(Variance v) { return v == Variance::multivector ? "multivector" : "form"; }

int ordering_sign(std::span<const unsigned> indices) {
  int sign = 1;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) return 0;
      if (indices[i] > indices[j]) sign = -sign;
    }
  }
  return sign;
}

// ---------------------------------------------------------------------------
// GradedElement

GradedElement::GradedElement(Variance variance, unsigned rank) : variance_(variance), rank_(rank) {
  if (rank > IndexSet::kMaxRank) throw ShapeError("rank " + std::to_string(rank) + " too large");
}

GradedElement GradedElement::scalar(Variance variance, unsigned rank, Expr f) {
  GradedElement g(variance, rank);
  g.add(IndexSet{}, f);
  return g;
}

GradedElement GradedElement::basis(Variance variance, unsigned rank, IndexSet s, Expr coefficient) {
  GradedElement g(variance, rank);
  g.add(s, coefficient);
  return g;
}

const Expr& GradedElement::coefficient(IndexSet s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? zero_expr() : it->second;
}

void GradedElement::add(IndexSet s, const Expr& c) {
  if (s.bound() > rank_) {
    throw ShapeError("tuple " + tuple_label(s) + " exceeds rank " + std::to_string(rank_));
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedElement GradedElement::component(unsigned degree) const {
  GradedElement out(variance_, rank_);
  for (const auto& [s, c] : terms_) {
    if (s.degree() == degree) out.terms_.emplace(s, c);
  }
  return out;
}

std::set<unsigned> GradedElement::degrees() const {
  std::set<unsigned> out;
  for (const auto& [s, c] : terms_) out.insert(s.degree());
  return out;
}

std::optional<unsigned> GradedElement::pure_degree() const {
  const auto ds = degrees();
  if (ds.size() != 1) return std::nullopt;
  return *ds.begin();
}

Var GradedElement::variable_bound() const {
  Var bound = 0;
  for (const auto& [s, c] : terms_) bound = std::max(bound, c.variable_bound());
  return bound;
}

GradedElement GradedElement::reinterpreted(Variance v) const {
  GradedElement out = *this;
  out.variance_ = v;
  return out;
}

GradedElement& GradedElement::operator+=(const GradedElement& other) {
  if (variance_ != other.variance_) throw MismatchError("adding a multivector to a form");
  require_same_rank(rank_, other.rank_, "add");
  for (const auto& [s, c] : other.terms_) add(s, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other) {
  if (variance_ != other.variance_) throw MismatchError("subtracting a multivector from a form");
  require_same_rank(rank_, other.rank_, "subtract");
  for (const auto& [s, c] : other.terms_) add(s, -c);
  return *this;
}

GradedElement& GradedElement::operator*=(const Expr& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

// ---------------------------------------------------------------------------
// Section

Section Section::basis(unsigned rank, unsigned a, Expr coefficient) {
  Section s(rank);
  s[a] = std::move(coefficient);
  return s;
}

Section Section::from_multivector(const GradedElement& p) {
  if (p.variance() != Variance::multivector) throw MismatchError("a section must be a multivector");
  Section s(p.rank());
  for (const auto& [idx, c] : p.terms()) {
    if (idx.degree() != 1) {
      throw MismatchError("a section must have degree 1, found degree " +
                          std::to_string(idx.degree()));
    }
    s[idx.elements().front()] = c;
  }
  return s;
}

bool Section::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Expr& e) { return e.is_zero(); });
}

GradedElement Section::to_multivector() const {
  GradedElement g(Variance::multivector, rank());
  for (unsigned a = 0; a < rank(); ++a) g.add(IndexSet::single(a), components_[a]);
  return g;
}

Section& Section::operator+=(const Section& other) {
  require_same_rank(rank(), other.rank(), "section add");
  for (unsigned a = 0; a < rank(); ++a) components_[a] += other.components_[a];
  return *this;
}

Section& Section::operator-=(const Section& other) {
  require_same_rank(rank(), other.rank(), "section subtract");
  for (unsigned a = 0; a < rank(); ++a) components_[a] -= other.components_[a];
  return *this;
}

Section operator*(const Expr& f, Section s) {
  for (auto& c : s.components_) c *= f;
  return s;
}

// ---------------------------------------------------------------------------
// Pointwise operations

GradedElement wedge(const GradedElement& p, const GradedElement& q) {
  if (p.variance() != q.variance()) throw MismatchError("wedge of a multivector with a form");
  require_same_rank(p.rank(), q.rank(), "wedge");
  GradedElement out(p.variance(), p.rank());
  for (const auto& [i, f] : p.terms()) {
    for (const auto& [j, g] : q.terms()) {
      const int sign = shuffle_sign(i, j);
      if (sign == 0) continue;
      Expr c = f * g;
      if (sign < 0) c = -c;
      out.add(IndexSet(i.bits() | j.bits()), c);
    }
  }
  return out;
}

GradedElement interior_product(const GradedElement& p, const GradedElement& eta) {
  if (p.variance() != Variance::multivector || eta.variance() != Variance::form) {
    throw MismatchError("interior product needs a multivector and a form");
  }
  require_same_rank(p.rank(), eta.rank(), "interior product");
  GradedElement out(Variance::form, eta.rank());
  for (const auto& [a, f] : p.terms()) {
    for (const auto& [b, g] : eta.terms()) {
      const auto [sign, rest] = contract(a, b);
      if (sign == 0) continue;
      Expr c = f * g;
      if (sign < 0) c = -c;
      out.add(rest, c);
    }
  }
  return out;
}

Expr pairing(const GradedElement& eta, const GradedElement& p) {
  if (eta.variance() != Variance::form || p.variance() != Variance::multivector) {
    throw MismatchError("pairing needs a form and a multivector");
  }
  require_same_rank(eta.rank(), p.rank(), "pairing");
  Expr total;
  for (const auto& [s, f] : eta.terms()) {
    auto it = p.terms().find(s);
    if (it != p.terms().end()) total += f * it->second;
  }
  return total;
}

GradedElement degree_scale(const GradedElement& p) {
  GradedElement out(p.variance(), p.rank());
  for (const auto& [s, c] : p.terms()) out.add(s, c * Expr(static_cast<long>(s.degree())));
  return out;
}

Expr evaluate_form(const GradedElement& eta, std::span<const Section> args) {
  if (eta.variance() != Variance::form) throw MismatchError("only forms can be evaluated");
  for (const auto& s : args) require_same_rank(eta.rank(), s.rank(), "form evaluation");
  const unsigned p = static_cast<unsigned>(args.size());
  Expr total;
  std::vector<unsigned> chosen(p);
  // Depth-first over one nonzero frame component per argument.
  auto recurse = [&](auto&& self, unsigned slot, const Expr& weight) -> void {
    if (slot == p) {
      const int sign = ordering_sign(chosen);
      if (sign == 0) return;
      const Expr& c = eta.coefficient(IndexSet::of(chosen));
      if (c.is_zero()) return;
      Expr term = weight * c;
      total += sign > 0 ? term : -term;
      return;
    }
    for (unsigned a = 0; a < eta.rank(); ++a) {
      const Expr& w = args[slot][a];
      if (w.is_zero()) continue;
      if (std::find(chosen.begin(), chosen.begin() + slot, a) != chosen.begin() + slot) continue;
      chosen[slot] = a;
      self(self, slot + 1, weight * w);
    }
  };
  recurse(recurse, 0, Expr(1));
  return total;
}

}  // namespace lac
