#include "pinchcert/tensor/sectional.hpp"

#include <random>

#include <Eigen/Dense>

namespace pinchcert::tensor {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double sectional(const Curv<double>& R, const Sym<double>& g, const std::vector<double>& X,
                 const std::vector<double>& Y) {
  const int n = R.dim();
  detail::require_same(n, g.dim());
  if (static_cast<int>(X.size()) != n || static_cast<int>(Y.size()) != n)
    throw DimensionMismatch("sectional: vector length differs from the dimension");
  double xx = 0, yy = 0, xy = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      xx += g(i, j) * X[i] * X[j];
      yy += g(i, j) * Y[i] * Y[j];
      xy += g(i, j) * X[i] * Y[j];
    }
  const double gram = xx * yy - xy * xy;
  if (!(gram >= 1e-12 * xx * yy) || xx * yy == 0) throw DegeneratePlane("vectors do not span a 2-plane");
  double num = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += R(i, j, k, l) * X[i] * Y[j] * X[k] * Y[l];
  return num / gram;
}

namespace {

// Curvature in a g-orthonormal frame e_a = sum_i M_ia d_i, with M = L^{-T}, g = L L^T.
struct Frame {
  MatrixXd M;
  std::vector<double> R;  // R'_abcd, row-major
  int n;
  double operator()(int a, int b, int c, int d) const {
    return R[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
  }
};

Frame orthonormal_frame(const Curv<double>& R, const Sym<double>& g) {
  const int n = R.dim();
  MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = g(i, j);
  Eigen::LLT<MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw SingularMetric("metric is not positive definite");
  const MatrixXd L = llt.matrixL();
  Frame f{L.transpose().inverse(), {}, n};
  const std::size_t nn = static_cast<std::size_t>(n);
  // transform one slot at a time
  std::vector<double> cur(R.entries()), next(cur.size());
  for (int slot = 0; slot < 4; ++slot) {
    std::size_t stride = 1;
    for (int k = slot; k < 3; ++k) stride *= nn;
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      const std::size_t digit = (idx / stride) % nn;
      const std::size_t base = idx - digit * stride;
      double acc = 0;
      for (std::size_t i = 0; i < nn; ++i) acc += f.M(static_cast<int>(i), static_cast<int>(digit)) * cur[base + i * stride];
      next[idx] = acc;
    }
    std::swap(cur, next);
  }
  f.R = std::move(cur);
  return f;
}

// A_jl = sum_ik R_ijkl u_i u_k, so that Sec(u, v) = v^T A v for orthonormal u, v.
MatrixXd form_for(const Frame& f, const VectorXd& u) {
  const int n = f.n;
  MatrixXd A = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0) continue;
    for (int k = 0; k < n; ++k) {
      const double w = u(i) * u(k);
      if (w == 0) continue;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) A(j, l) += w * f(i, j, k, l);
    }
  }
  return 0.5 * (A + A.transpose());
}

// Unit minimizer of v^T A v over v perpendicular to u, with its value.
std::pair<VectorXd, double> best_partner(const MatrixXd& A, const VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::HouseholderQR<MatrixXd> qr(u);
  const MatrixXd Q = qr.householderQ();
  const MatrixXd N = Q.rightCols(n - 1);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(N.transpose() * A * N);
  VectorXd v = N * es.eigenvectors().col(0);
  return {v.normalized(), es.eigenvalues()(0)};
}

struct Local {
  double value;
  VectorXd u, v;
};

Local descend(const Frame& f, VectorXd u, VectorXd v, const MinSectionalOptions& opt) {
  u.normalize();
  v -= v.dot(u) * u;
  v.normalize();
  double value = v.dot(form_for(f, u) * v);
  for (int it = 0; it < opt.max_iterations; ++it) {
    auto [v2, val_v] = best_partner(form_for(f, u), u);
    auto [u2, val_u] = best_partner(form_for(f, v2), v2);
    const double next = std::min(val_v, val_u);
    v = v2;
    u = u2;
    const bool done = value - next <= opt.tol * (1 + std::abs(next));
    value = std::min(value, next);
    if (done) break;
  }
  value = v.dot(form_for(f, u) * v);
  return {value, u, v};
}

}  // namespace

SectionalMin min_sectional(const Curv<double>& R, const Sym<double>& g, const MinSectionalOptions& opt) {
  const int n = R.dim();
  detail::require_same(n, g.dim());
  if (n < 2) throw DimensionTooSmall("sectional curvature needs n >= 2");
  const Frame f = orthonormal_frame(R, g);

  std::vector<std::pair<VectorXd, VectorXd>> starts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) starts.emplace_back(VectorXd::Unit(n, i), VectorXd::Unit(n, j));
  for (int k = 0; k < opt.restarts; ++k) {
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(k));
    std::normal_distribution<double> normal;
    VectorXd u(n), v(n);
    for (int i = 0; i < n; ++i) u(i) = normal(rng);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    starts.emplace_back(u, v);
  }

  SectionalMin best;
  best.value = std::numeric_limits<double>::infinity();
  VectorXd bu, bv;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const Local loc = descend(f, starts[s].first, starts[s].second, opt);
    if (loc.value < best.value) {
      best.value = loc.value;
      best.start = static_cast<int>(s);
      bu = loc.u;
      bv = loc.v;
    }
  }
  const VectorXd X = f.M * bu, Y = f.M * bv;
  best.plane.x.assign(X.data(), X.data() + n);
  best.plane.y.assign(Y.data(), Y.data() + n);
  return best;
}

SectionalMin max_sectional(const Curv<double>& R, const Sym<double>& g, const MinSectionalOptions& opt) {
  SectionalMin m = min_sectional(-1.0 * R, g, opt);
  m.value = -m.value;
  return m;
}

double sectional_margin(double value) { return 1e-6 * std::abs(value) + 1e-9; }

double pinching_for_test(double sec_min, double scalar_curvature) {
  return (sec_min - sectional_margin(sec_min)) / scalar_curvature;
}

}  // namespace pinchcert::tensor
