#pragma once

#include <random>

#include "pinchcert/tensor/sectional.hpp"

namespace pinchcert::tensor {

using Rng = std::mt19937_64;

/// Entries uniform in [-1, 1].
Sym<double> random_sym(int n, Rng& rng);
Sym<double> random_traceless(int n, Rng& rng);
/// I + A^T A / n with A uniform in [-1, 1].
Sym<double> random_metric(int n, Rng& rng);
/// Symmetric in its first pair and traceless in it.
Three<double> random_three(int n, Rng& rng);

/// Uniform [-1, 1] array projected onto the curvature symmetries: pair
/// antisymmetrization, pair exchange, then removal of the Bianchi part.
Curv<double> random_curvature(int n, Rng& rng);

struct PositiveSample {
  Curv<double> R;
  double sec_min;  // min_sectional after the shift
  double target;   // the drawn minimum in (0, 1)
};

/// random_curvature shifted by c g ⊙ g (which adds 2c to every sectional
/// curvature) so that its minimum sectional curvature is a uniform draw in (0, 1).
PositiveSample random_positive_curvature(int n, Rng& rng, const MinSectionalOptions& opt = {});

}  // namespace pinchcert::tensor
