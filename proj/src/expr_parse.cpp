// Recursive-descent parser for the polynomial grammar:
//
//   expr     := term (('+' | '-') term)*
//   term     := ['-'] factor ('*' factor)*
//   factor   := base ('^' NAT)?
//   base     := RATIONAL | VAR | '(' expr ')'
//   RATIONAL := INT ('/' POSINT)?
//
// Whitespace is insignificant everywhere.

#include <cctype>
#include <limits>

#include "lac/errors.hpp"
#include "lac/expr.hpp"

namespace lac {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string_view digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }

  Expr parse_expr() {
    Expr sum = parse_term();
    while (true) {
      if (accept('+')) {
        sum += parse_term();
      } else if (accept('-')) {
        sum -= parse_term();
      } else {
        return sum;
      }
    }
  }

  Expr parse_term() {
    const bool negate = accept('-');
    Expr product = parse_factor();
    while (accept('*')) product *= parse_factor();
    return negate ? -product : product;
  }

  Expr parse_factor() {
    Expr base = parse_base();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    const std::string_view nat = digits();
    mpz_class exponent(std::string(nat), 10);
    if (exponent > std::numeric_limits<Exponent>::max()) {
      throw ParseError("exponent too large", at);
    }
    return base.pow(exponent.get_ui());
  }

  Expr parse_base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (at_digit()) {
      mpz_class numerator(std::string(digits()), 10);
      mpz_class denominator = 1;
      if (accept('/')) {
        if (!at_digit()) fail("expected a denominator");
        const std::size_t at = pos_;
        denominator = mpz_class(std::string(digits()), 10);
        if (denominator == 0) throw ParseError("zero denominator", at);
      }
      Rational q(numerator, denominator);
      q.canonicalize();
      return Expr(q);
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (auto v = chart_.find(name)) return Expr::variable(*v);
      throw UnknownVariableError(std::string(name), start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Chart& chart) { return Parser(text, chart).parse_all(); }

}  // namespace lac
