#include "pinchcert/ca/rational.hpp"

#include <cctype>

namespace pinchcert::ca {

std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

std::string to_fraction_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw ParseError("not an exact rational literal: '" + std::string(text) + "'");
  const Integer p{std::string(num)};
  const Integer q = den.empty() ? Integer(1) : Integer{std::string(den)};
  if (q == 0) throw ZeroDenominator("zero denominator in literal '" + std::string(text) + "'");
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

}  // namespace pinchcert::ca
