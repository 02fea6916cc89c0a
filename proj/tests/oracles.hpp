#pragma once

// Direct floating-point transcriptions of the coefficient formulas, written
// independently of the exact engine and used to cross-check it.

#include <algorithm>
#include <cmath>

namespace oracle {

using real = long double;

inline real metric_factor(real a1, real a2) { return 1 + a1 * a1 + a2 * a2; }
inline real cross_term(real a1, real a2) { return a1 + a2 + a1 * a2; }
inline real h(real a1, real a2) { return cross_term(a1, a2) / metric_factor(a1, a2); }

inline real eps(real a1, real a2, real n, real t) {
  return (1 + 2 * t) / (2 * n * h(a1, a2) + 4 + n * (n - 3));
}

inline real s(real a1, real a2, real n) {
  const real x = n * (1 + h(a1, a2));
  return (x - 1) / x;
}

inline real q0(real a1, real a2, real b1, real b2, real b3, real n) {
  return (n - 2) / n * (a1 * (b1 + b3) + a2 * (b1 + b2) + b2 + b3) + n * (b1 * b1 + b2 * b2 + b3 * b3) +
         2 * (b1 * b2 + b1 * b3 + b2 * b3);
}

inline real q2(real a1, real a2, real b1, real b2, real b3, real n, real t) {
  const real D = metric_factor(a1, a2);
  const real k = (n - 2) / (2 * n);
  return q0(a1, a2, b1, b2, b3, n) / D + k * k * 2 * cross_term(a1, a2) / D + (n - 2) * (1 + 2 * t) / (2 * n);
}

// Minimum of Q2 over the grid {-5, -5 + step, ..., 5}^3. For fixed (b1, b2)
// Q2 is a convex quadratic in b3, so the best grid value of b3 is one of the
// two grid points around its vertex.
inline real q2_grid_min(real a1, real a2, real n, real t, real step = 0.01L, real box = 5) {
  const long steps = std::lround(2 * box / step);
  real best = INFINITY;
  for (long i = 0; i <= steps; ++i) {
    const real b1 = -box + i * step;
    for (long j = 0; j <= steps; ++j) {
      const real b2 = -box + j * step;
      // d/db3: [(n-2)/n (a1 + 1) + 2 n b3 + 2 (b1 + b2)] / D
      const real vertex = -((n - 2) / n * (a1 + 1) + 2 * (b1 + b2)) / (2 * n);
      const real k = std::floor((vertex + box) / step);
      for (real kk : {k, k + 1}) {
        const real idx = std::clamp<real>(kk, 0, static_cast<real>(steps));
        best = std::min(best, q2(a1, a2, b1, b2, -box + idx * step, n, t));
      }
    }
  }
  return best;
}

}  // namespace oracle
