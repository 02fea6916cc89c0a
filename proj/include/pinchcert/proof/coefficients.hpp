#pragma once

#include "pinchcert/ca/rational_func.hpp"

namespace pinchcert::proof {

using ca::Poly;
using ca::Rational;
using ca::RationalFunc;
using ca::Var;

// Coefficient functions of the integral inequality, in the fixed variable set
// {a1, a2, b1, b2, b3, t, n, eps, s}.
//
//   D = 1 + a1^2 + a2^2,  P = a1 + a2 + a1*a2,  h = P / D
//
// |F|^2 = D |∇R̊ic|^2 + 2P ∇_k R̊_ij ∇_j R̊_ik + Q0 |∇R|^2, and after
// integrating by parts and inserting the pinching estimate
//
//   0 >= ∫|F|^2 / D - Q2 ∫|∇R|^2 + Q_RRc ∫R|R̊ic|^2 + Q3Rc ∫R̊_ij R̊_il R̊_jl.

RationalFunc metric_factor();  // D
RationalFunc cross_term();     // P
RationalFunc h_ratio();        // P / D

/// f = P + D and g = (n - 1) f + P, whose positivity gives s in (0, 1).
Poly f_poly();
Poly g_poly();

RationalFunc build_q0();
RationalFunc build_q1();
RationalFunc build_q2();
RationalFunc build_q_rrc();
RationalFunc build_q3rc();

/// s(a1, a2, n) solving Q3Rc = 0 (Q3Rc is affine in s).
const RationalFunc& symbolic_s();
/// eps(a1, a2, n, t) solving Q_RRc = 0 once s is eliminated (affine in eps).
const RationalFunc& symbolic_eps();
/// Q_RRc with s eliminated.
const RationalFunc& q_rrc_without_s();

/// Root of the affine function f in v; throws std::domain_error when f does
/// not depend on v or is not affine in it.
RationalFunc solve_affine(const RationalFunc& f, Var v);

}  // namespace pinchcert::proof
