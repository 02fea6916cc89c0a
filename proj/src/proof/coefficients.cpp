#include "pinchcert/proof/coefficients.hpp"

#include <stdexcept>

namespace pinchcert::proof {

namespace {

RationalFunc v(Var x) { return RationalFunc::variable(x); }
RationalFunc q(long p, long r = 1) { return RationalFunc(Rational(p, r)); }

}  // namespace

RationalFunc metric_factor() { return q(1) + v(Var::a1).pow(2) + v(Var::a2).pow(2); }

RationalFunc cross_term() { return v(Var::a1) + v(Var::a2) + v(Var::a1) * v(Var::a2); }

RationalFunc h_ratio() { return cross_term() / metric_factor(); }

Poly f_poly() { return (cross_term() + metric_factor()).num(); }

Poly g_poly() {
  const RationalFunc n = v(Var::n);
  return ((n - q(1)) * RationalFunc(f_poly()) + cross_term()).num();
}

RationalFunc build_q0() {
  const RationalFunc a1 = v(Var::a1), a2 = v(Var::a2);
  const RationalFunc b1 = v(Var::b1), b2 = v(Var::b2), b3 = v(Var::b3);
  const RationalFunc n = v(Var::n);
  return (n - q(2)) / n * (a1 * (b1 + b3) + a2 * (b1 + b2) + b2 + b3) +
         n * (b1 * b1 + b2 * b2 + b3 * b3) + q(2) * (b1 * b2 + b1 * b3 + b2 * b3);
}

RationalFunc build_q1() {
  const RationalFunc n = v(Var::n);
  const RationalFunc D = metric_factor();
  const RationalFunc bianchi = (n - q(2)) / (q(2) * n);
  return build_q0() / D + bianchi * bianchi * q(2) * cross_term() / D;
}

RationalFunc build_q2() {
  const RationalFunc n = v(Var::n), t = v(Var::t);
  return build_q1() + (n - q(2)) * (q(1) + q(2) * t) / (q(2) * n);
}

RationalFunc build_q_rrc() {
  const RationalFunc n = v(Var::n), t = v(Var::t), eps = v(Var::eps), s = v(Var::s);
  const RationalFunc two_h = q(2) * h_ratio();
  const RationalFunc pinch = (n * n - q(4) * n + q(2) - n * n * (n - q(2)) * (n - q(3)) * eps) / (q(2) * n) -
                             (n - q(4)) / q(2) * (q(1) - n * (n - q(1)) * eps) * s;
  return (two_h / n - q(2) * (q(1) + n * t) / n) - (two_h + q(2)) * pinch;
}

RationalFunc build_q3rc() {
  const RationalFunc n = v(Var::n), s = v(Var::s);
  const RationalFunc two_h = q(2) * h_ratio();
  return two_h + (two_h + q(2)) * (n - q(1) - n * s);
}

RationalFunc solve_affine(const RationalFunc& f, Var x) {
  const RationalFunc slope = ca::derivative(f, x);
  if (slope.is_zero()) throw std::domain_error("solve_affine: no dependence on the variable");
  if (slope.uses(x)) throw std::domain_error("solve_affine: not affine in the variable");
  const RationalFunc offset = ca::substitute(f, ca::Bindings{{x, RationalFunc(Rational(0))}});
  return -offset / slope;
}

const RationalFunc& symbolic_s() {
  static const RationalFunc s = solve_affine(build_q3rc(), Var::s);
  return s;
}

const RationalFunc& q_rrc_without_s() {
  static const RationalFunc f = ca::substitute(build_q_rrc(), ca::Bindings{{Var::s, symbolic_s()}});
  return f;
}

const RationalFunc& symbolic_eps() {
  static const RationalFunc e = solve_affine(q_rrc_without_s(), Var::eps);
  return e;
}

}  // namespace pinchcert::proof
