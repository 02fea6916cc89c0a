#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pinchcert::ca {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroDenominator : std::domain_error {
  using std::domain_error::domain_error;
};

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

/// Always "p/q" (q >= 1). Used for certificate fields.
std::string to_fraction_string(const Rational& q);

/// Parses an exact literal: optional sign, digits, optional "/digits".
/// Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

}  // namespace pinchcert::ca
