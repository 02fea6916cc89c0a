#include "pinchcert/ca/text.hpp"

#include <cctype>
#include <sstream>

namespace pinchcert::ca {

namespace {

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (Var v : kAllVars) {
    const auto e = m[index_of(v)];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += var_name(v);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_string(m);
    if (mono.empty()) {
      out += ca::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += ca::to_string(mag) + '*' + mono;
    }
  }
  return out;
}

std::string to_string(const RationalFunc& f) {
  if (f.den() == Poly(Rational(1))) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalFunc parse_all() {
    RationalFunc value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << what << " at offset " << pos_ << " in '" << text_ << "'";
    throw ParseError(msg.str());
  }

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

  RationalFunc expr() {
    RationalFunc acc = product();
    while (true) {
      if (accept('+')) {
        acc += product();
      } else if (accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  RationalFunc product() {
    RationalFunc acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        RationalFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RationalFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunc power() {
    RationalFunc base = atom();
    if (accept('^')) {
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (negative && base.is_zero()) fail("zero to a negative power");
      return base.pow(negative ? -e : e);
    }
    return base;
  }

  RationalFunc atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      RationalFunc inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
        fail("decimal literals are not exact");
      return RationalFunc(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const auto name = text_.substr(start, pos_ - start);
      auto v = var_from_name(name);
      if (!v) fail("unknown variable '" + std::string(name) + "'");
      return RationalFunc::variable(*v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunc parse(std::string_view text) { return Parser(text).parse_all(); }

Poly parse_poly(std::string_view text) {
  RationalFunc f = parse(text);
  if (!(f.den() == Poly(Rational(1)))) throw ParseError("expression is not a polynomial: " + std::string(text));
  return f.num();
}

}  // namespace pinchcert::ca
