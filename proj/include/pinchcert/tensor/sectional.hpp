#pragma once

#include <cstdint>
#include <vector>

#include "pinchcert/tensor/tensor.hpp"

namespace pinchcert::tensor {

struct Plane {
  std::vector<double> x, y;  // g-orthonormal
};

struct SectionalMin {
  double value = 0;
  Plane plane;
  int start = -1;  // index of the winning start (coordinate planes first)
};

struct MinSectionalOptions {
  int restarts = 12;  // random starts, in addition to every coordinate plane
  double tol = 1e-14;
  std::uint64_t seed = 0;
  int max_iterations = 400;
};

/// Multistart local minimization of Sec over 2-planes. Each start alternates
/// between the two vectors: with X fixed, Sec(X, .) restricted to X^perp is a
/// quadratic form whose smallest eigenvector is the best Y, and vice versa.
/// Random start k uses seed + k.
SectionalMin min_sectional(const Curv<double>& R, const Sym<double>& g, const MinSectionalOptions& opt = {});

/// Largest sectional curvature, as the minimum for -R.
SectionalMin max_sectional(const Curv<double>& R, const Sym<double>& g, const MinSectionalOptions& opt = {});

/// 1e-6 |value| + 1e-9
double sectional_margin(double value);

/// (value - margin) / R: a pinching constant the tensor satisfies with room to spare.
double pinching_for_test(double sec_min, double scalar_curvature);

}  // namespace pinchcert::tensor
