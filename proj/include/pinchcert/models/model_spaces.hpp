#pragma once

#include <string>
#include <vector>

#include "pinchcert/tensor/tensor.hpp"

namespace pinchcert::models {

using ca::Rational;
using tensor::Curv;
using tensor::Sym;

struct KnownInvariants {
  Rational scalar;
  std::vector<Rational> ricci_eigenvalues;  // ascending
  Rational sec_min, sec_max;
  bool einstein = false;
  bool weyl_zero = false;
};

// Exact curvature data at a point, in an orthonormal frame.
struct ModelSpace {
  std::string name;
  int dim = 0;
  Sym<Rational> metric;
  Curv<Rational> curvature;
  KnownInvariants known;
};

/// Constant sectional curvature kappa: R = (kappa / 2) g ⊙ g.
ModelSpace space_form(int n, const Rational& kappa);
/// Round sphere of the given radius.
ModelSpace round_sphere(int n, const Rational& radius);
/// Same local data as the unit S^4.
ModelSpace real_projective_4();
/// Fubini-Study CP^2 with holomorphic sectional curvature 4, Sec in [1, 4].
ModelSpace fubini_study_cp2();
/// S^2(r1) x S^2(r2).
ModelSpace product_spheres(const Rational& r1, const Rational& r2);

/// Every fixture above with small parameters, for batch checks.
std::vector<ModelSpace> standard_fixtures();

}  // namespace pinchcert::models
