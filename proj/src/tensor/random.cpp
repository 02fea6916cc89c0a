#include "pinchcert/tensor/random.hpp"

namespace pinchcert::tensor {

namespace {

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

std::size_t idx(int n, int i, int j, int k, int l) {
  return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
}

}  // namespace

Sym<double> random_sym(int n, Rng& rng) {
  return Sym<double>::from_function(n, [&](int, int) { return uniform(rng); });
}

Sym<double> random_traceless(int n, Rng& rng) {
  const Sym<double> h = random_sym(n, rng);
  return h - (h.trace() / n) * Sym<double>::identity(n);
}

Sym<double> random_metric(int n, Rng& rng) {
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (double& x : a) x = uniform(rng);
  return Sym<double>::from_function(n, [&](int i, int j) {
    double acc = i == j ? 1.0 : 0.0;
    for (int k = 0; k < n; ++k) acc += a[static_cast<std::size_t>(k) * n + i] * a[static_cast<std::size_t>(k) * n + j] / n;
    return acc;
  });
}

Three<double> random_three(int n, Rng& rng) {
  std::vector<double> t(static_cast<std::size_t>(n) * n * n);
  const auto at = [&](int i, int j, int k) -> double& { return t[(static_cast<std::size_t>(i) * n + j) * n + k]; };
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) at(i, j, k) = at(j, i, k) = uniform(rng);
    double tr = 0;
    for (int i = 0; i < n; ++i) tr += at(i, i, k);
    for (int i = 0; i < n; ++i) at(i, i, k) -= tr / n;
  }
  return Three<double>::from_entries(n, std::move(t));
}

Curv<double> random_curvature(int n, Rng& rng) {
  std::vector<double> a(static_cast<std::size_t>(n) * n * n * n);
  for (double& x : a) x = uniform(rng);
  const auto A = [&](int i, int j, int k, int l) { return a[idx(n, i, j, k, l)]; };
  const auto B = [&](int i, int j, int k, int l) {
    return A(i, j, k, l) - A(j, i, k, l) - A(i, j, l, k) + A(j, i, l, k);
  };
  const auto C = [&](int i, int j, int k, int l) { return B(i, j, k, l) + B(k, l, i, j); };
  return Curv<double>::from_function(n, [&](int i, int j, int k, int l) {
    return C(i, j, k, l) - (C(i, j, k, l) + C(i, k, l, j) + C(i, l, j, k)) / 3.0;
  });
}

PositiveSample random_positive_curvature(int n, Rng& rng, const MinSectionalOptions& opt) {
  const Sym<double> g = Sym<double>::identity(n);
  const Curv<double> base = random_curvature(n, rng);
  const double m = min_sectional(base, g, opt).value;
  const double target = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double c = (target - m) / 2;
  Curv<double> R = base + c * kulkarni_nomizu(g, g);
  const double sec_min = min_sectional(R, g, opt).value;
  return {std::move(R), sec_min, target};
}

}  // namespace pinchcert::tensor
