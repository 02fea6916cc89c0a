#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinchcert/proof/coefficients.hpp"
#include "pinchcert/proof/high_precision.hpp"
#include "pinchcert/proof/sos.hpp"

namespace pinchcert::proof {

/// Raised when the square root in the explicit b-formulas has a negative argument.
class NegativeRadicand : public std::domain_error {
 public:
  NegativeRadicand(int n, Rational t, Rational radicand);
  int n;
  Rational t;
  Rational radicand;
};

enum class Branch { below, critical, above };  // 1 + 2t < 0, = 0, > 0

Branch branch_of(const Rational& t);
const char* branch_name(Branch b);

/// s with Q3Rc(a1, a2, s, n) = 0.
Rational solve_s(const Rational& a1, const Rational& a2, const Rational& n);

/// eps with Q_RRc = 0 at s = solve_s(a1, a2, n).
Rational eps_bound(const Rational& a1, const Rational& a2, const Rational& n, const Rational& t);

/// (1+2t)/(n-2)^2 for t <= -1/2, (1+2t)/(n^2-n+4) above.
Rational theorem_threshold(int n, const Rational& t);

struct EpsOptimum {
  Rational a1, a2;
  Rational h;        // h(a1, a2), an endpoint of [-1/2, 1] unless t = -1/2
  Rational epsilon;  // eps_bound(a1, a2, n, t)
  std::string attaining_locus;
  std::vector<SosCertificate> certificates;
};

/// Global optimum of eps_bound over (a1, a2) for fixed n >= 3 and t. eps is a
/// monotone function of h whose direction is the sign of -(1 + 2t); the range
/// of h is certified by the returned identities.
EpsOptimum optimize_eps(int n, const Rational& t);

struct StationaryMinimum {
  std::array<RationalFunc, 2> point;  // (a1, a2)
  RationalFunc value;
  RationalFunc hessian_det;
  bool stationary = false;
  bool hessian_positive = false;  // on n >= 3
};

struct FgPositivity {
  StationaryMinimum f;
  StationaryMinimum g;
  bool s_matches_ratio = false;  // s == g / (n f)
  std::vector<SosCertificate> certificates;
  bool verified() const;
};

/// f and g minimized exactly, symbolic in n.
FgPositivity certify_f_g_positivity();

struct Q2Minimum {
  RationalFunc value;
  std::array<RationalFunc, 3> b_star;
  std::array<std::array<RationalFunc, 3>, 3> hessian;
};

/// Exact minimum of Q2 over (b1, b2, b3). Any other variable may be bound in
/// `params`; unbound ones stay symbolic.
Q2Minimum q2_min_over_b(const ca::Bindings& params);

struct BFeasibility {
  bool feasible = false;
  Rational min_value;
  std::array<Rational, 3> b_star;
  /// A zero of Q2 (b_star shifted along b1) when feasible.
  std::optional<std::array<HighPrec, 3>> zero;
  HighPrec zero_residual = 0;
};

BFeasibility q2_min_over_b(int n, const Rational& t, const Rational& a1, const Rational& a2);

/// True when min_b Q2 at (a1, a2) is certified positive for every n >= 3 and
/// t >= t_lower (shift positivity of the symbolic minimum).
bool q2_min_positive_on(const Rational& a1, const Rational& a2, const Rational& t_lower);

struct ClosedFormB {
  Branch branch;
  Rational a1, a2;
  Rational radicand;
  std::array<HighPrec, 3> b;
  HighPrec residual;
  bool passed = false;  // |residual| < 1e-40
};

/// Evaluates the explicit b-formulas. Requires n >= 3 and t <= -1/2.
ClosedFormB verify_closed_form_b(int n, const Rational& t);

struct NamedCheck {
  std::string name;
  bool passed;
};

struct PinchCertificate {
  int n = 0;
  Rational t;
  Branch branch = Branch::above;
  Rational epsilon;
  Rational a1, a2, h, s;
  std::string attaining_locus;
  RationalFunc q0, q1, q2;  // at (n, t, a1, a2), b symbolic
  Rational q_rrc, q3rc;     // at all parameters
  BFeasibility b;
  std::optional<ClosedFormB> closed_form_b;
  bool requires_constant_scalar = false;
  bool bach_flat = false;  // n = 4, t = -1/3
  std::vector<std::string> notes;
  std::vector<SosCertificate> certificates;
  std::vector<NamedCheck> checks;

  bool valid() const;
};

/// Full derivation at (n, t); n >= 3.
PinchCertificate theorem_lookup(int n, const Rational& t);

}  // namespace pinchcert::proof
