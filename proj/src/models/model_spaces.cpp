#include "pinchcert/models/model_spaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace pinchcert::models {

namespace {

int delta(int i, int j) { return i == j ? 1 : 0; }

std::string rational_label(const Rational& q) { return ca::to_string(q); }

}  // namespace

ModelSpace space_form(int n, const Rational& kappa) {
  if (n < 2) throw tensor::DimensionTooSmall("space form needs n >= 2");
  ModelSpace m;
  m.name = "space_form(n=" + std::to_string(n) + ", kappa=" + rational_label(kappa) + ")";
  m.dim = n;
  m.metric = Sym<Rational>::identity(n);
  m.curvature = (kappa / 2) * tensor::kulkarni_nomizu(m.metric, m.metric);
  m.known.scalar = Rational(n * (n - 1)) * kappa;
  m.known.ricci_eigenvalues.assign(n, Rational(n - 1) * kappa);
  m.known.sec_min = m.known.sec_max = kappa;
  m.known.einstein = true;
  m.known.weyl_zero = true;
  return m;
}

ModelSpace round_sphere(int n, const Rational& radius) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  ModelSpace m = space_form(n, 1 / (radius * radius));
  m.name = "S^" + std::to_string(n) + "(" + rational_label(radius) + ")";
  return m;
}

ModelSpace real_projective_4() {
  ModelSpace m = space_form(4, 1);
  m.name = "RP^4";
  return m;
}

ModelSpace fubini_study_cp2() {
  // complex structure J e1 = e2, J e3 = e4; w_ij = <e_i, J e_j>
  const auto w = [](int i, int j) {
    if ((i == 1 && j == 0) || (i == 3 && j == 2)) return 1;
    if ((i == 0 && j == 1) || (i == 2 && j == 3)) return -1;
    return 0;
  };
  ModelSpace m;
  m.name = "CP^2";
  m.dim = 4;
  m.metric = Sym<Rational>::identity(4);
  m.curvature = Curv<Rational>::from_function(4, [&](int i, int j, int k, int l) {
    return Rational(delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k) + w(i, k) * w(j, l) - w(i, l) * w(j, k) +
                    2 * w(i, j) * w(k, l));
  });
  m.known.scalar = 24;
  m.known.ricci_eigenvalues.assign(4, Rational(6));
  m.known.sec_min = 1;
  m.known.sec_max = 4;
  m.known.einstein = true;
  m.known.weyl_zero = false;
  return m;
}

ModelSpace product_spheres(const Rational& r1, const Rational& r2) {
  if (r1 <= 0 || r2 <= 0) throw std::invalid_argument("radii must be positive");
  const Rational k1 = 1 / (r1 * r1), k2 = 1 / (r2 * r2);
  ModelSpace m;
  m.name = "S^2(" + rational_label(r1) + ") x S^2(" + rational_label(r2) + ")";
  m.dim = 4;
  m.metric = Sym<Rational>::identity(4);
  m.curvature = Curv<Rational>::from_function(4, [&](int i, int j, int k, int l) {
    const int block = i / 2;
    if (j / 2 != block || k / 2 != block || l / 2 != block) return Rational(0);
    return (block == 0 ? k1 : k2) * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k));
  });
  m.known.scalar = 2 * k1 + 2 * k2;
  m.known.ricci_eigenvalues = {k1, k1, k2, k2};
  std::sort(m.known.ricci_eigenvalues.begin(), m.known.ricci_eigenvalues.end());
  m.known.sec_min = 0;
  m.known.sec_max = std::max(k1, k2);
  m.known.einstein = k1 == k2;
  m.known.weyl_zero = false;
  return m;
}

std::vector<ModelSpace> standard_fixtures() {
  std::vector<ModelSpace> out;
  for (int n = 3; n <= 6; ++n) out.push_back(space_form(n, 1));
  out.push_back(space_form(3, -1));
  out.push_back(space_form(5, 0));
  for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) out.push_back(round_sphere(4, r));
  out.push_back(real_projective_4());
  out.push_back(fubini_study_cp2());
  out.push_back(product_spheres(1, 1));
  out.push_back(product_spheres(1, 2));
  out.push_back(product_spheres(Rational(2, 3), Rational(3, 2)));
  return out;
}

}  // namespace pinchcert::models
