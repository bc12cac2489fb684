#include "lac/expr.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "lac/errors.hpp"

namespace lac {

// ---------------------------------------------------------------------------
// Chart

bool is_valid_coordinate_name(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_valid_coordinate_name(n)) throw Error("invalid coordinate name '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate coordinate name '" + n + "'");
  }
}

Chart Chart::numbered(std::string_view prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return Chart(std::move(names));
}

std::optional<Var> Chart::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Var>(it - names_.begin());
}

Var Chart::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw UnknownVariableError(std::string(name));
}

Chart Chart::extended(const Chart& tail) const {
  std::vector<std::string> names = names_;
  names.insert(names.end(), tail.names_.begin(), tail.names_.end());
  return Chart(std::move(names));
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(Var v, Exponent e) {
  Monomial m;
  if (e > 0) m.factors_.emplace_back(v, e);
  return m;
}

Exponent Monomial::exponent(Var v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, Var x) { return f.first < x; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      const std::uint64_t e = std::uint64_t{i->second} + j->second;
      if (e > std::numeric_limits<Exponent>::max()) throw std::overflow_error("exponent overflow");
      out.factors_.emplace_back(i->first, static_cast<Exponent>(e));
      ++i;
      ++j;
    }
  }
  return out;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db;
  // Same degree: the first variable where the exponents differ decides, the
  // larger exponent coming first.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first != fb[j].first) return fa[i].first < fb[j].first;
    if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second;
    ++i;
    ++j;
  }
  return i < fa.size() && j == fb.size();
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Expr Expr::variable(Var v) { return term(1, Monomial::variable(v)); }

Expr Expr::term(const Rational& coefficient, Monomial monomial) {
  Expr e;
  if (coefficient != 0) e.terms_.emplace(std::move(monomial), coefficient);
  return e;
}

std::optional<Rational> Expr::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
  return std::nullopt;
}

Var Expr::variable_bound() const {
  Var bound = 0;
  for (const auto& [m, c] : terms_) {
    if (!m.factors().empty()) bound = std::max(bound, m.factors().back().first + 1);
  }
  return bound;
}

std::uint64_t Expr::total_degree() const {
  // Terms are sorted by descending degree.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

void Expr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Expr& Expr::operator+=(const Expr& other) {
  if (this == &other) return scale(2);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& other) {
  if (this == &other) {
    terms_.clear();
    return *this;
  }
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Expr& Expr::operator*=(const Expr& other) { return *this = *this * other; }

Expr& Expr::scale(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, coeff] : terms_) coeff *= c;
  }
  return *this;
}

Expr operator-(Expr a) { return a.scale(-1); }

Expr Expr::pow(std::uint64_t exponent) const {
  Expr result(1);
  Expr base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Expr Expr::derivative(Var v) const {
  Expr out;
  for (const auto& [m, c] : terms_) {
    const Exponent e = m.exponent(v);
    if (e == 0) continue;
    Monomial rest;
    for (const auto& [w, k] : m.factors()) {
      rest = rest * Monomial::variable(w, w == v ? k - 1 : k);
    }
    out.add_term(rest, c * e);
  }
  return out;
}

Rational Expr::evaluate(const std::map<Var, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw Error("missing value for variable #" + std::to_string(v));
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      value *= p;
    }
    total += value;
  }
  return total;
}

Expr Expr::substitute(std::span<const Expr> images) const {
  Expr out;
  for (const auto& [m, c] : terms_) {
    Expr t(c);
    for (const auto& [v, e] : m.factors()) {
      if (v >= images.size()) {
        throw ShapeError("substitution has no image for variable #" + std::to_string(v));
      }
      t *= images[v].pow(e);
    }
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named-coordinate helpers

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Expr& f, const Chart& chart) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational magnitude = abs(c);
    if (m.is_one()) {
      out += to_string(magnitude);
      continue;
    }
    if (magnitude != 1) {
      out += to_string(magnitude);
      out += '*';
    }
    bool first_factor = true;
    for (const auto& [v, e] : m.factors()) {
      if (!first_factor) out += '*';
      first_factor = false;
      out += v < chart.size() ? chart.name(v) : "#" + std::to_string(v);
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

Expr differentiate(const Expr& f, const Chart& chart, std::string_view coordinate) {
  return f.derivative(chart.index_of(coordinate));
}

Rational eval_at(const Expr& f, const Chart& chart,
                 const std::map<std::string, Rational>& point) {
  std::map<Var, Rational> by_index;
  for (const auto& [name, value] : point) by_index.emplace(chart.index_of(name), value);
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (!by_index.contains(v)) {
        throw Error("missing value for coordinate '" +
                    (v < chart.size() ? chart.name(v) : "#" + std::to_string(v)) + "'");
      }
    }
  }
  return f.evaluate(by_index);
}

void require_within(const Expr& f, std::size_t bound, std::string_view context) {
  if (f.variable_bound() > bound) {
    throw ShapeError(std::string(context) + ": expression uses a coordinate outside the chart");
  }
}

}  // namespace lac
