#include <cctype>
#include <sstream>
#include <string>

#include "steiner/errors.hpp"
#include "steiner/qpoly.hpp"

namespace steiner::polycert {

namespace {

// Expanding q^n for huge n is never what a catalog means.
constexpr unsigned long kMaxExponent = 100000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  QPoly parse() {
    QPoly result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial syntax error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly expr() {
    bool negate = accept('-');
    QPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  QPoly term() {
    QPoly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  QPoly power() {
    QPoly base = atom();
    if (!accept('^')) return base;
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("exponent must be a nonnegative integer");
    Integer e = integer();
    if (e > kMaxExponent) fail("exponent too large");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  QPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == 'q') {
      ++pos_;
      return QPoly::indeterminate();
    }
    if (c == '(') {
      ++pos_;
      QPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return QPoly::constant(Rational(integer()));
    fail("expected integer, 'q' or '('");
  }

  Integer integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly poly_parse(std::string_view expr) { return Parser(expr).parse(); }

std::string poly_print(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coeffs()[i];
    if (c == 0) continue;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << c.get_str();
      continue;
    }
    if (c != 1) out << c.get_str() << '*';
    out << 'q';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

}  // namespace steiner::polycert
