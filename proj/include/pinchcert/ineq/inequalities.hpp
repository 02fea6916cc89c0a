#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchcert/tensor/sectional.hpp"

namespace pinchcert::ineq {

using tensor::Curv;
using tensor::Sym;
using tensor::Three;

class HypothesisUnverified : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class SOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};
class NonTracelessInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IneqReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  int n = 0;
  double eps = 0;
  std::optional<double> s;
  std::string witness;

  bool violated(double tol) const { return slack < -tol; }
};

nlohmann::ordered_json to_json(const IneqReport& r);
/// One JSON object per line.
void write_jsonl(std::ostream& os, const std::vector<IneqReport>& reports);

// Everything the pointwise inequalities need from one curvature tensor.
struct Evaluated {
  int n = 0;
  double scalar = 0;
  double sec_min = 0;
  bool sec_min_exact = false;  // known analytically; no safety margin needed
  double r_norm2 = 0;  // |R̊ic|^2
  double quad = 0;     // R_ikjl R̊_ij R̊_kl
  double cubic = 0;    // R̊_ij R̊_ik R̊_jk
  std::string witness;
};

/// Contractions plus min_sectional.
Evaluated evaluate(const Curv<double>& R, const Sym<double>& g, const tensor::MinSectionalOptions& opt = {},
                   std::string witness = "");

/// With a minimum sectional curvature already computed numerically; the
/// margin still applies.
Evaluated evaluate(const Curv<double>& R, const Sym<double>& g, double sec_min, std::string witness = "");

/// Same, with an analytically known minimum sectional curvature.
Evaluated evaluate_exact(const Curv<double>& R, const Sym<double>& g, double sec_min, std::string witness = "");

/// Throws HypothesisUnverified unless sec_min - margin >= eps * R (margin 0
/// for an exact sec_min).
void require_pinching(const Evaluated& e, double eps);

// quad <= (1 - n^2 eps)/n R |r|^2 + cubic
IneqReport prop21_first(const Evaluated& e, double eps);
// quad <= (n^2 - 4n + 2 - n^2 (n-2)(n-3) eps)/(2n) R |r|^2 - (n-1) cubic
IneqReport prop21_second(const Evaluated& e, double eps);
// the convex combination with weight s on the first inequality, s in [0, 1]
IneqReport cor_sec(const Evaluated& e, double eps, double s);

IneqReport prop21_first(const Curv<double>& R, const Sym<double>& g, double eps);
IneqReport prop21_second(const Curv<double>& R, const Sym<double>& g, double eps);
IneqReport cor_sec(const Curv<double>& R, const Sym<double>& g, double eps, double s);

struct EndpointIdentities {
  bool s0_is_second = false;
  bool s1_is_first = false;
  bool convex_combination = false;  // coefficients affine in s between the two
  bool ok() const { return s0_is_second && s1_is_first && convex_combination; }
};

/// Exact check on the coefficients of R|r|^2 and of the cubic term, symbolic in n and eps.
EndpointIdentities cor_sec_endpoints();

struct FParams {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0, b3 = 0;
};

struct IdentityPair {
  double direct = 0;
  double formula = 0;
};

/// |F|^2 summed directly against the quadratic-form expression, with
/// (nabla R)_i = 2n/(n-2) sum_k T_ikk. Throws DimensionTooSmall for n < 3.
IdentityPair f_norm_identity(const Three<double>& grad_ric, const FParams& p);

/// <E(T, r, hess), r> with E the traceless-Ricci Euler-Lagrange right-hand side,
/// against (1+2t) <r, hess> - 2 quad - (2 + 2nt)/n R |r|^2. Throws
/// NonTracelessInput unless tr(r) = 0.
IdentityPair weitzenboeck_contract(const Curv<double>& R, const Sym<double>& g, const Sym<double>& r,
                                   const Sym<double>& hess, double t);

}  // namespace pinchcert::ineq
