#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinchcert/ca/rational.hpp"

namespace pinchcert::tensor {

using ca::Rational;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class DimensionTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class SymmetryViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class SingularMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class DegeneratePlane : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x, double scale) { return std::fabs(x) <= 1e-12 * (1 + scale); }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static bool is_zero(const Rational& x, const Rational&) { return x == 0; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

// Symmetric 2-tensor h_ij in a fixed frame.
template <class S>
class Sym {
 public:
  Sym() = default;
  static Sym zero(int n) { return Sym(n); }
  static Sym identity(int n) {
    Sym s(n);
    for (int i = 0; i < n; ++i) s.at(i, i) = S(1);
    return s;
  }
  /// f(i, j) is evaluated for i <= j and mirrored.
  template <class F>
  static Sym from_function(int n, F&& f) {
    Sym s(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) s.at(i, j) = s.at(j, i) = S(f(i, j));
    return s;
  }
  /// Row-major entries; throws SymmetryViolation unless symmetric.
  static Sym from_entries(int n, std::vector<S> entries) {
    if (entries.size() != static_cast<std::size_t>(n) * n) throw DimensionMismatch("symmetric tensor: wrong size");
    Sym s(n);
    s.a_ = std::move(entries);
    S scale = s.max_abs();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (!ScalarTraits<S>::is_zero(s(i, j) - s(j, i), scale)) throw SymmetryViolation("matrix is not symmetric");
    return s;
  }

  int dim() const { return n_; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<S>& entries() const { return a_; }

  S trace() const {
    S acc(0);
    for (int i = 0; i < n_; ++i) acc += (*this)(i, i);
    return acc;
  }
  S max_abs() const {
    S m(0);
    for (const S& x : a_)
      if (ScalarTraits<S>::abs(x) > m) m = ScalarTraits<S>::abs(x);
    return m;
  }

  friend Sym operator+(const Sym& x, const Sym& y) { return combine(x, y, S(1)); }
  friend Sym operator-(const Sym& x, const Sym& y) { return combine(x, y, S(-1)); }
  friend Sym operator*(const S& c, const Sym& x) {
    Sym out = x;
    for (S& v : out.a_) v *= c;
    return out;
  }
  friend bool operator==(const Sym& x, const Sym& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

  template <class T, class F>
  Sym<T> convert(F&& f) const {
    return Sym<T>::from_function(n_, [&](int i, int j) { return f((*this)(i, j)); });
  }

 private:
  explicit Sym(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, S(0)) {}
  S& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  static Sym combine(const Sym& x, const Sym& y, const S& c) {
    if (x.n_ != y.n_) throw DimensionMismatch("symmetric tensors of different dimension");
    Sym out = x;
    for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] += c * y.a_[k];
    return out;
  }

  int n_ = 0;
  std::vector<S> a_;
};

// Algebraic curvature tensor R_ijkl (all indices down). Convention:
// R_ijkl = <R(e_i, e_j) e_l, e_k> with Sec(X, Y) = R(X, Y, X, Y) / |X ^ Y|^2,
// so the unit sphere has R_ijkl = d_ik d_jl - d_il d_jk.
template <class S>
class Curv {
 public:
  Curv() = default;
  static Curv zero(int n) { return Curv(n); }
  template <class F>
  static Curv from_function(int n, F&& f) {
    Curv c(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) c.at(i, j, k, l) = S(f(i, j, k, l));
    return c;
  }
  /// Row-major n^4 entries; throws SymmetryViolation unless every curvature
  /// symmetry and the first Bianchi identity hold.
  static Curv from_entries(int n, std::vector<S> entries) {
    if (entries.size() != static_cast<std::size_t>(n) * n * n * n)
      throw DimensionMismatch("curvature tensor: wrong size");
    Curv c(n);
    c.a_ = std::move(entries);
    if (!ScalarTraits<S>::is_zero(c.symmetry_defect(), c.max_abs()))
      throw SymmetryViolation("entries violate the curvature symmetries");
    return c;
  }

  int dim() const { return n_; }
  const S& operator()(int i, int j, int k, int l) const { return a_[index(i, j, k, l)]; }
  const std::vector<S>& entries() const { return a_; }

  S max_abs() const {
    S m(0);
    for (const S& x : a_)
      if (ScalarTraits<S>::abs(x) > m) m = ScalarTraits<S>::abs(x);
    return m;
  }

  /// Largest violation of antisymmetry in each pair, pair symmetry and first Bianchi.
  S symmetry_defect() const {
    S worst(0);
    const auto note = [&](const S& x) {
      if (ScalarTraits<S>::abs(x) > worst) worst = ScalarTraits<S>::abs(x);
    };
    const Curv& R = *this;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l) {
            note(R(i, j, k, l) + R(j, i, k, l));
            note(R(i, j, k, l) + R(i, j, l, k));
            note(R(i, j, k, l) - R(k, l, i, j));
            note(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k));
          }
    return worst;
  }

  friend Curv operator+(const Curv& x, const Curv& y) { return combine(x, y, S(1)); }
  friend Curv operator-(const Curv& x, const Curv& y) { return combine(x, y, S(-1)); }
  friend Curv operator*(const S& c, const Curv& x) {
    Curv out = x;
    for (S& v : out.a_) v *= c;
    return out;
  }
  friend bool operator==(const Curv& x, const Curv& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

  template <class T, class F>
  Curv<T> convert(F&& f) const {
    return Curv<T>::from_function(n_, [&](int i, int j, int k, int l) { return f((*this)(i, j, k, l)); });
  }

 private:
  explicit Curv(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n * n, S(0)) {}
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  S& at(int i, int j, int k, int l) { return a_[index(i, j, k, l)]; }
  static Curv combine(const Curv& x, const Curv& y, const S& c) {
    if (x.n_ != y.n_) throw DimensionMismatch("curvature tensors of different dimension");
    Curv out = x;
    for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] += c * y.a_[k];
    return out;
  }

  int n_ = 0;
  std::vector<S> a_;
};

// T_ijk symmetric and traceless in (i, j); plays the role of a covariant
// derivative of a traceless symmetric tensor, T_ijk = nabla_k r_ij.
template <class S>
class Three {
 public:
  Three() = default;
  /// Throws SymmetryViolation unless T_ijk = T_jik and sum_i T_iik = 0.
  static Three from_entries(int n, std::vector<S> entries) {
    if (entries.size() != static_cast<std::size_t>(n) * n * n) throw DimensionMismatch("3-tensor: wrong size");
    Three t(n);
    t.a_ = std::move(entries);
    S scale(0);
    for (const S& x : t.a_)
      if (ScalarTraits<S>::abs(x) > scale) scale = ScalarTraits<S>::abs(x);
    for (int k = 0; k < n; ++k) {
      S tr(0);
      for (int i = 0; i < n; ++i) {
        tr += t(i, i, k);
        for (int j = 0; j < i; ++j)
          if (!ScalarTraits<S>::is_zero(t(i, j, k) - t(j, i, k), scale))
            throw SymmetryViolation("3-tensor is not symmetric in its first pair");
      }
      if (!ScalarTraits<S>::is_zero(tr, scale)) throw SymmetryViolation("3-tensor is not traceless in its first pair");
    }
    return t;
  }

  int dim() const { return n_; }
  const S& operator()(int i, int j, int k) const {
    return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  const std::vector<S>& entries() const { return a_; }

 private:
  explicit Three(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n, S(0)) {}
  int n_ = 0;
  std::vector<S> a_;
};

namespace detail {

inline void require_same(int a, int b) {
  if (a != b) throw DimensionMismatch("dimension mismatch");
}

}  // namespace detail

/// (h ⊙ k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il
template <class S>
Curv<S> kulkarni_nomizu(const Sym<S>& h, const Sym<S>& k) {
  detail::require_same(h.dim(), k.dim());
  return Curv<S>::from_function(h.dim(), [&](int i, int j, int a, int b) {
    return h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) - h(j, a) * k(i, b);
  });
}

/// Inverse of a positive definite metric (Gauss-Jordan with a positivity
/// check on the pivots); throws SingularMetric otherwise.
template <class S>
Sym<S> metric_inverse(const Sym<S>& g) {
  const int n = g.dim();
  std::vector<S> a(g.entries());
  std::vector<S> inv(static_cast<std::size_t>(n) * n, S(0));
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + i] = S(1);
  const S scale = g.max_abs();
  const auto A = [&](int i, int j) -> S& { return a[static_cast<std::size_t>(i) * n + j]; };
  const auto I = [&](int i, int j) -> S& { return inv[static_cast<std::size_t>(i) * n + j]; };
  // Symmetric positive definite: no pivoting needed, every pivot is positive.
  for (int c = 0; c < n; ++c) {
    const S pivot = A(c, c);
    if (!(pivot > S(0)) || ScalarTraits<S>::is_zero(pivot, scale)) throw SingularMetric("metric is not positive definite");
    for (int j = 0; j < n; ++j) {
      A(c, j) /= pivot;
      I(c, j) /= pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const S f = A(r, c);
      if (f == S(0)) continue;
      for (int j = 0; j < n; ++j) {
        A(r, j) -= f * A(c, j);
        I(r, j) -= f * I(c, j);
      }
    }
  }
  return Sym<S>::from_function(n, [&](int i, int j) { return (I(i, j) + I(j, i)) / S(2); });
}

/// Ric_ik = g^lj R_lijk
template <class S>
Sym<S> ricci(const Curv<S>& R, const Sym<S>& g) {
  detail::require_same(R.dim(), g.dim());
  const Sym<S> gi = metric_inverse(g);
  const int n = R.dim();
  return Sym<S>::from_function(n, [&](int i, int k) {
    S acc(0);
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        if (gi(l, j) != S(0)) acc += gi(l, j) * R(l, i, j, k);
    return acc;
  });
}

/// g^ij h_ij
template <class S>
S trace(const Sym<S>& h, const Sym<S>& g) {
  detail::require_same(h.dim(), g.dim());
  const Sym<S> gi = metric_inverse(g);
  S acc(0);
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j) acc += gi(i, j) * h(i, j);
  return acc;
}

template <class S>
S scalar(const Curv<S>& R, const Sym<S>& g) {
  return trace(ricci(R, g), g);
}

template <class S>
Sym<S> traceless_ricci(const Curv<S>& R, const Sym<S>& g) {
  const Sym<S> ric = ricci(R, g);
  return ric - (trace(ric, g) / S(g.dim())) * g;
}

template <class S>
struct Decomposition {
  Curv<S> weyl;
  Sym<S> traceless_ricci;
  S scalar;
};

/// R = W + R̊ ⊙ g / (n-2) + R g ⊙ g / (2n(n-1))
template <class S>
Decomposition<S> decompose(const Curv<S>& R, const Sym<S>& g) {
  const int n = R.dim();
  if (n < 3) throw DimensionTooSmall("decomposition needs n >= 3");
  const Sym<S> ric = ricci(R, g);
  const S sc = trace(ric, g);
  const Sym<S> r0 = ric - (sc / S(n)) * g;
  const Curv<S> w = R - (S(1) / S(n - 2)) * kulkarni_nomizu(r0, g) -
                    (sc / S(2 * n * (n - 1))) * kulkarni_nomizu(g, g);
  return {w, r0, sc};
}

template <class S>
Curv<S> recompose(const Decomposition<S>& d, const Sym<S>& g) {
  const int n = g.dim();
  if (n < 3) throw DimensionTooSmall("decomposition needs n >= 3");
  return d.weyl + (S(1) / S(n - 2)) * kulkarni_nomizu(d.traceless_ricci, g) +
         (d.scalar / S(2 * n * (n - 1))) * kulkarni_nomizu(g, g);
}

/// h^i_j as a row-major matrix g^ia h_aj.
template <class S>
std::vector<S> raise_first(const Sym<S>& h, const Sym<S>& gi) {
  const int n = h.dim();
  std::vector<S> m(static_cast<std::size_t>(n) * n, S(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S acc(0);
      for (int a = 0; a < n; ++a) acc += gi(i, a) * h(a, j);
      m[static_cast<std::size_t>(i) * n + j] = acc;
    }
  return m;
}

/// |h|^2 = h_ij h^ij
template <class S>
S norm2(const Sym<S>& h, const Sym<S>& g) {
  detail::require_same(h.dim(), g.dim());
  const int n = h.dim();
  const std::vector<S> m = raise_first(h, metric_inverse(g));
  S acc(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += m[static_cast<std::size_t>(i) * n + j] * m[static_cast<std::size_t>(j) * n + i];
  return acc;
}

/// R with every index raised: R^ijkl, returned with the same layout.
template <class S>
Curv<S> raise_all(const Curv<S>& R, const Sym<S>& gi) {
  const int n = R.dim();
  std::vector<S> cur(R.entries());
  std::vector<S> next(cur.size());
  const std::size_t nn = static_cast<std::size_t>(n);
  // contract one slot at a time; slot `s` has stride n^(3-s)
  for (int slot = 0; slot < 4; ++slot) {
    std::size_t stride = 1;
    for (int k = slot; k < 3; ++k) stride *= nn;
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      const std::size_t digit = (idx / stride) % nn;
      const std::size_t base = idx - digit * stride;
      S acc(0);
      for (std::size_t a = 0; a < nn; ++a) acc += gi(static_cast<int>(digit), static_cast<int>(a)) * cur[base + a * stride];
      next[idx] = acc;
    }
    std::swap(cur, next);
  }
  Curv<S> out = Curv<S>::from_function(n, [&](int i, int j, int k, int l) {
    return cur[((static_cast<std::size_t>(i) * nn + j) * nn + k) * nn + l];
  });
  return out;
}

/// |R|^2 = R_ijkl R^ijkl
template <class S>
S norm2(const Curv<S>& R, const Sym<S>& g) {
  detail::require_same(R.dim(), g.dim());
  const Curv<S> up = raise_all(R, metric_inverse(g));
  S acc(0);
  for (std::size_t k = 0; k < R.entries().size(); ++k) acc += R.entries()[k] * up.entries()[k];
  return acc;
}

template <class S>
struct Contractions {
  S quad;   // R_ikjl r^ij r^kl
  S cubic;  // r_i^j r_j^k r_k^i
};

template <class S>
Contractions<S> contractions(const Curv<S>& R, const Sym<S>& r, const Sym<S>& g) {
  detail::require_same(R.dim(), r.dim());
  detail::require_same(R.dim(), g.dim());
  const int n = R.dim();
  const Sym<S> gi = metric_inverse(g);
  const std::vector<S> m = raise_first(r, gi);  // r^i_j
  // r^ij = r^i_a g^aj
  std::vector<S> up(static_cast<std::size_t>(n) * n, S(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) up[static_cast<std::size_t>(i) * n + j] += m[static_cast<std::size_t>(i) * n + a] * gi(a, j);
  const auto U = [&](int i, int j) { return up[static_cast<std::size_t>(i) * n + j]; };
  const auto M = [&](int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; };
  Contractions<S> out{S(0), S(0)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const S rij = U(i, j);
        if (rij == S(0)) continue;
        for (int l = 0; l < n; ++l) out.quad += R(i, k, j, l) * rij * U(k, l);
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.cubic += M(i, j) * M(j, k) * M(k, i);
  return out;
}

/// Sec(X, Y) = R(X, Y, X, Y) / (|X|^2 |Y|^2 - <X, Y>^2); throws DegeneratePlane
/// when the Gram determinant is below 1e-12 |X|^2 |Y|^2.
double sectional(const Curv<double>& R, const Sym<double>& g, const std::vector<double>& X,
                 const std::vector<double>& Y);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Sym<double> to_double(const Sym<Rational>& h) {
  return h.convert<double>([](const Rational& q) { return to_double(q); });
}
inline Curv<double> to_double(const Curv<Rational>& R) {
  return R.convert<double>([](const Rational& q) { return to_double(q); });
}

}  // namespace pinchcert::tensor
