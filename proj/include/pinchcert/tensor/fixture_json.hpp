#pragma once

#include <string>

#include <json.hpp>

#include "pinchcert/tensor/tensor.hpp"

namespace pinchcert::tensor {

// Index convention recorded in every fixture file.
inline constexpr const char* kConventionTag = "R_ijkl = <R(e_i,e_j)e_l,e_k>; Sec(X,Y) = R(X,Y,X,Y)/|X^Y|^2";

struct Fixture {
  std::string name;
  Sym<double> metric;
  Curv<double> curvature;
};

/// Exact entries are written as "p/q" strings, floating ones as numbers.
nlohmann::ordered_json fixture_to_json(const std::string& name, const Sym<Rational>& g, const Curv<Rational>& R);
nlohmann::ordered_json fixture_to_json(const std::string& name, const Sym<double>& g, const Curv<double>& R);

/// Validates the convention tag, sizes and every curvature symmetry; throws
/// std::invalid_argument (SymmetryViolation, DimensionMismatch) on bad input.
Fixture fixture_from_json(const nlohmann::json& j);

}  // namespace pinchcert::tensor
