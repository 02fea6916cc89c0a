#pragma once

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pinchcert/ca/rational.hpp"

namespace pinchcert::proof {

/// 60 significant decimal digits.
using HighPrec = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>,
                                               boost::multiprecision::et_off>;

inline HighPrec to_high_precision(const ca::Rational& q) {
  return HighPrec(ca::numerator_of(q).str()) / HighPrec(ca::denominator_of(q).str());
}

/// Scientific notation with `digits` significant digits.
inline std::string to_decimal_string(const HighPrec& x, int digits = 45) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace pinchcert::proof
