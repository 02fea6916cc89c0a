#pragma once

#include <map>
#include <string>
#include <vector>

#include "pinchcert/ca/rational_func.hpp"

namespace pinchcert::proof {

using ca::Poly;
using ca::Rational;
using ca::RationalFunc;
using ca::Var;

struct WeightedSquare {
  Poly weight;  // depends on domain variables only
  Poly base;
};

// Certificate that claim >= 0 (or > 0 when strict) wherever every domain
// variable is at least its lower bound:
//
//   multiplier * num(claim) * den(claim) == sum_i weight_i * base_i^2
//
// with the multiplier and every weight nonnegative on the domain (checked by
// shifting to the lower bounds). Since num * den has the sign of the claim,
// the identity transfers the sign of the right-hand side.
struct SosCertificate {
  std::string name;
  RationalFunc claim;
  Poly multiplier;
  std::vector<WeightedSquare> squares;
  std::map<Var, Rational> domain;
  bool strict = false;
};

/// Builds the certificate and solves for the multiplier, which must be a
/// polynomial in the domain variables; throws std::logic_error otherwise.
SosCertificate make_sos_certificate(std::string name, const RationalFunc& claim,
                                    std::vector<WeightedSquare> squares,
                                    std::map<Var, Rational> domain = {}, bool strict = false);

struct SosCheck {
  bool identity = false;
  bool weights_nonnegative = false;
  bool multiplier_positive = false;
  bool strictness = false;  // true when not strict, or when a strictly positive square term exists
  bool ok() const { return identity && weights_nonnegative && multiplier_positive && strictness; }
};

SosCheck check(const SosCertificate& cert);

/// squares of `base` times each square of D = 1 + a1^2 + a2^2.
std::vector<WeightedSquare> times_metric_factor(const std::vector<WeightedSquare>& squares);

}  // namespace pinchcert::proof
