#include "pinchcert/proof/engine.hpp"

#include <algorithm>
#include <sstream>

namespace pinchcert::proof {

using ca::Bindings;

namespace {

RationalFunc var(Var v) { return RationalFunc::variable(v); }
Poly pvar(Var v) { return Poly::variable(v); }

std::string describe(int n, const Rational& t) {
  std::ostringstream os;
  os << "n = " << n << ", t = " << ca::to_string(t);
  return os.str();
}

void require_dimension(int n) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
}

Rational value_at(const RationalFunc& f, const std::map<Var, Rational>& point) {
  return ca::substitute(f, point).constant_value();
}

bool positive_for_n_at_least_3(const RationalFunc& q) {
  return ca::positive_after_shift(q.num() * q.den(), {{Var::n, Rational(3)}});
}

StationaryMinimum minimize_quadratic_in_a(const Poly& p) {
  const RationalFunc f(p);
  const std::array<Var, 2> a{Var::a1, Var::a2};
  std::array<RationalFunc, 2> offset;
  std::array<std::array<RationalFunc, 2>, 2> H;
  const Bindings origin{{Var::a1, RationalFunc(0)}, {Var::a2, RationalFunc(0)}};
  for (int i = 0; i < 2; ++i) {
    const RationalFunc gi = ca::derivative(f, a[i]);
    offset[i] = ca::substitute(gi, origin);
    for (int j = 0; j < 2; ++j) H[i][j] = ca::derivative(gi, a[j]);
  }
  StationaryMinimum out;
  out.hessian_det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
  out.point[0] = (H[0][1] * offset[1] - H[1][1] * offset[0]) / out.hessian_det;
  out.point[1] = (H[1][0] * offset[0] - H[0][0] * offset[1]) / out.hessian_det;
  const Bindings at{{Var::a1, out.point[0]}, {Var::a2, out.point[1]}};
  out.value = ca::substitute(f, at);
  out.stationary = ca::is_stationary(f, at);
  out.hessian_positive = positive_for_n_at_least_3(out.hessian_det) && positive_for_n_at_least_3(H[0][0]);
  return out;
}

// Gaussian elimination over the field of rational functions.
std::vector<RationalFunc> solve_linear(std::vector<std::vector<RationalFunc>> A, std::vector<RationalFunc> rhs) {
  const std::size_t m = A.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && A[pivot][col].is_zero()) ++pivot;
    if (pivot == m) throw std::logic_error("singular linear system");
    std::swap(A[pivot], A[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      if (A[r][col].is_zero()) continue;
      const RationalFunc factor = A[r][col] / A[col][col];
      for (std::size_t c = col; c < m; ++c) A[r][c] -= factor * A[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<RationalFunc> x(m);
  for (std::size_t i = m; i-- > 0;) {
    RationalFunc acc = rhs[i];
    for (std::size_t c = i + 1; c < m; ++c) acc -= A[i][c] * x[c];
    x[i] = acc / A[i][i];
  }
  return x;
}

std::array<HighPrec, ca::kNumVars> hp_point(int n, const Rational& t, const Rational& a1, const Rational& a2,
                                           const std::array<HighPrec, 3>& b) {
  std::array<HighPrec, ca::kNumVars> p;
  p.fill(HighPrec(0));
  p[ca::index_of(Var::a1)] = to_high_precision(a1);
  p[ca::index_of(Var::a2)] = to_high_precision(a2);
  p[ca::index_of(Var::b1)] = b[0];
  p[ca::index_of(Var::b2)] = b[1];
  p[ca::index_of(Var::b3)] = b[2];
  p[ca::index_of(Var::t)] = to_high_precision(t);
  p[ca::index_of(Var::n)] = HighPrec(n);
  return p;
}

HighPrec q2_at(int n, const Rational& t, const Rational& a1, const Rational& a2, const std::array<HighPrec, 3>& b) {
  static const RationalFunc q2 = build_q2();
  return ca::evaluate_as(q2, hp_point(n, t, a1, a2, b), to_high_precision);
}

const HighPrec& residual_tolerance() {
  static const HighPrec tol("1e-40");
  return tol;
}

}  // namespace

NegativeRadicand::NegativeRadicand(int n_, Rational t_, Rational radicand_)
    : std::domain_error("negative radicand in the b-formulas at " + describe(n_, t_)),
      n(n_),
      t(std::move(t_)),
      radicand(std::move(radicand_)) {}

Branch branch_of(const Rational& t) {
  const Rational x = 1 + 2 * t;
  return x < 0 ? Branch::below : (x == 0 ? Branch::critical : Branch::above);
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::below: return "below";
    case Branch::critical: return "critical";
    case Branch::above: return "above";
  }
  return "?";
}

Rational solve_s(const Rational& a1, const Rational& a2, const Rational& n) {
  return value_at(symbolic_s(), {{Var::a1, a1}, {Var::a2, a2}, {Var::n, n}});
}

Rational eps_bound(const Rational& a1, const Rational& a2, const Rational& n, const Rational& t) {
  return value_at(symbolic_eps(), {{Var::a1, a1}, {Var::a2, a2}, {Var::n, n}, {Var::t, t}});
}

Rational theorem_threshold(int n, const Rational& t) {
  require_dimension(n);
  const Rational N(n);
  if (branch_of(t) != Branch::above) return (1 + 2 * t) / ((N - 2) * (N - 2));
  return (1 + 2 * t) / (N * N - N + 4);
}

EpsOptimum optimize_eps(int n, const Rational& t) {
  require_dimension(n);
  const Poly a1 = pvar(Var::a1), a2 = pvar(Var::a2), N = pvar(Var::n);
  const RationalFunc D = metric_factor(), P = cross_term(), h = h_ratio();
  const Poly line = a1 + a2 + Poly(1);

  EpsOptimum out;
  out.certificates.push_back(make_sos_certificate("h_lower_identity", 2 * P + D, {{1, line}}));
  out.certificates.push_back(make_sos_certificate(
      "h_upper_identity", 2 * (D - P), {{1, a1 - a2}, {1, a1 - Poly(1)}, {1, a2 - Poly(1)}}));
  out.certificates.push_back(
      make_sos_certificate("metric_factor_positive", D, {{1, Poly(1)}, {1, a1}, {1, a2}}, {}, true));
  out.certificates.push_back(
      make_sos_certificate("h_lower", h + RationalFunc(Rational(1, 2)), times_metric_factor({{1, line}})));
  out.certificates.push_back(make_sos_certificate(
      "h_upper", RationalFunc(1) - h,
      times_metric_factor({{1, a1 - a2}, {1, a1 - Poly(1)}, {1, a2 - Poly(1)}})));
  const RationalFunc n_sym = var(Var::n);
  const RationalFunc c = RationalFunc(4) + n_sym * (n_sym - RationalFunc(3));
  out.certificates.push_back(make_sos_certificate(
      "quadratic_in_n_positive", c, {{1, N - Poly(Rational(3, 2))}, {Rational(7, 4), Poly(1)}}, {}, true));
  out.certificates.push_back(make_sos_certificate(
      "eps_denominator_bound", 2 * n_sym * h + c - (n_sym - RationalFunc(2)).pow(2),
      times_metric_factor({{N, line}}), {{Var::n, Rational(3)}}));

  switch (branch_of(t)) {
    case Branch::below:
      out.a1 = -2;
      out.a2 = 1;
      out.attaining_locus = "a1 + a2 + 1 = 0";
      break;
    case Branch::critical:
      out.a1 = 0;
      out.a2 = 0;
      out.attaining_locus = "all (a1, a2)";
      break;
    case Branch::above:
      out.a1 = 1;
      out.a2 = 1;
      out.attaining_locus = "a1 = a2 = 1";
      break;
  }
  out.h = value_at(h, {{Var::a1, out.a1}, {Var::a2, out.a2}});
  out.epsilon = eps_bound(out.a1, out.a2, Rational(n), t);
  return out;
}

bool FgPositivity::verified() const {
  const auto ok = [](const StationaryMinimum& m) { return m.stationary && m.hessian_positive; };
  return ok(f) && ok(g) && s_matches_ratio &&
         std::all_of(certificates.begin(), certificates.end(), [](const auto& c) { return check(c).ok(); });
}

FgPositivity certify_f_g_positivity() {
  FgPositivity out;
  out.f = minimize_quadratic_in_a(f_poly());
  out.g = minimize_quadratic_in_a(g_poly());

  const RationalFunc f(f_poly()), g(g_poly()), n = var(Var::n);
  out.s_matches_ratio = ca::equivalent(symbolic_s(), g / (n * f));

  const Poly a1 = pvar(Var::a1), a2 = pvar(Var::a2), N = pvar(Var::n);
  const std::vector<WeightedSquare> f_squares{{1, a1 + Rational(1, 2) * a2 + Poly(Rational(1, 2))},
                                              {Rational(3, 4), a2 + Poly(Rational(1, 3))}};
  out.certificates.push_back(make_sos_certificate("f_minimum", f - out.f.value, f_squares));
  auto f_strict = f_squares;
  f_strict.push_back({out.f.value.constant_value(), Poly(1)});
  out.certificates.push_back(make_sos_certificate("f_positive", f, f_strict, {}, true));

  // With U = (3n-2) a1 + n, V = (3n-2) a2 + n:
  // 4 (n-1) (3n-2)^2 (g - gmin) = (2 (n-1) U + n V)^2 + (3n^2 - 8n + 4) V^2.
  const std::map<Var, Rational> n_domain{{Var::n, Rational(3)}};
  const Poly k = 3 * N - Poly(2);
  const Poly U = k * a1 + N, V = k * a2 + N;
  const std::vector<WeightedSquare> g_squares{{1, 2 * (N - Poly(1)) * U + N * V},
                                              {3 * N * N - 8 * N + Poly(4), V}};
  out.certificates.push_back(make_sos_certificate("g_minimum", g - out.g.value, g_squares, n_domain));
  auto g_strict = g_squares;
  g_strict.push_back({4 * (N - Poly(1)) * k * (2 * N - Poly(1)) * (N - Poly(2)), Poly(1)});
  out.certificates.push_back(make_sos_certificate("g_positive", g, g_strict, n_domain, true));
  return out;
}

Q2Minimum q2_min_over_b(const Bindings& params) {
  for (Var v : {Var::b1, Var::b2, Var::b3})
    if (params.contains(v)) throw std::invalid_argument("q2_min_over_b: b variables must stay free");
  const RationalFunc q2 = ca::substitute(build_q2(), params);
  const std::array<Var, 3> b{Var::b1, Var::b2, Var::b3};
  const Bindings origin{{Var::b1, RationalFunc(0)}, {Var::b2, RationalFunc(0)}, {Var::b3, RationalFunc(0)}};

  Q2Minimum out;
  std::vector<std::vector<RationalFunc>> A(3, std::vector<RationalFunc>(3));
  std::vector<RationalFunc> rhs(3);
  for (int i = 0; i < 3; ++i) {
    const RationalFunc gi = ca::derivative(q2, b[i]);
    rhs[i] = -ca::substitute(gi, origin);
    for (int j = 0; j < 3; ++j) {
      out.hessian[i][j] = ca::derivative(gi, b[j]);
      A[i][j] = out.hessian[i][j];
    }
  }
  const auto x = solve_linear(A, rhs);
  Bindings at;
  for (int i = 0; i < 3; ++i) {
    out.b_star[i] = x[i];
    at[b[i]] = x[i];
  }
  out.value = ca::substitute(q2, at);
  return out;
}

BFeasibility q2_min_over_b(int n, const Rational& t, const Rational& a1, const Rational& a2) {
  require_dimension(n);
  const Q2Minimum m = q2_min_over_b(Bindings{{Var::n, RationalFunc(Rational(n))}, {Var::t, RationalFunc(t)},
                                            {Var::a1, RationalFunc(a1)}, {Var::a2, RationalFunc(a2)}});
  BFeasibility out;
  out.min_value = m.value.constant_value();
  for (int i = 0; i < 3; ++i) out.b_star[i] = m.b_star[i].constant_value();
  out.feasible = out.min_value <= 0;
  if (!out.feasible) return out;

  // Q2(b* + lam e1) = min + H11 lam^2 / 2.
  std::array<HighPrec, 3> z;
  for (int i = 0; i < 3; ++i) z[i] = to_high_precision(out.b_star[i]);
  const Rational h11 = m.hessian[0][0].constant_value();
  z[0] += sqrt(to_high_precision(-2 * out.min_value / h11));
  out.zero_residual = q2_at(n, t, a1, a2, z);
  out.zero = z;
  return out;
}

bool q2_min_positive_on(const Rational& a1, const Rational& a2, const Rational& t_lower) {
  const Q2Minimum m = q2_min_over_b(Bindings{{Var::a1, RationalFunc(a1)}, {Var::a2, RationalFunc(a2)}});
  return ca::positive_after_shift(m.value.num() * m.value.den(), {{Var::n, Rational(3)}, {Var::t, t_lower}});
}

ClosedFormB verify_closed_form_b(int n, const Rational& t) {
  require_dimension(n);
  if (branch_of(t) == Branch::above) throw std::invalid_argument("verify_closed_form_b: requires t <= -1/2");
  const Rational N(n);
  ClosedFormB out;
  out.branch = branch_of(t);
  if (out.branch == Branch::below) {
    out.a1 = -2;
    out.a2 = 1;
    out.radicand = 3 * N * N * (N - 2) * (4 * t - (1 + 4 * t) * N) / (2 * (N - 1));
    if (out.radicand < 0) throw NegativeRadicand(n, t, out.radicand);
    const HighPrec root = sqrt(to_high_precision(out.radicand));
    out.b[0] = to_high_precision(1 / N + 1 / (2 - 2 * N)) - root / HighPrec(n * n);
    out.b[1] = to_high_precision(-(N - 2) / (N * (N - 1)));
    out.b[2] = to_high_precision((N * N - N - 2) / (2 * N * (N + 1) * (N - 1)));
  } else {
    out.a1 = 0;
    out.a2 = 0;
    const Rational m = N * N + N - 2;
    out.radicand = 2 * (N - 2) * (N - 2) / m;
    const HighPrec root = sqrt(to_high_precision(out.radicand));
    out.b[0] = to_high_precision(1 / N - N / m) - root / HighPrec(2 * n);
    out.b[1] = out.b[2] = to_high_precision(-(N - 2) / (2 * m));
  }
  out.residual = q2_at(n, t, out.a1, out.a2, out.b);
  out.passed = abs(out.residual) < residual_tolerance();
  return out;
}

bool PinchCertificate::valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

PinchCertificate theorem_lookup(int n, const Rational& t) {
  require_dimension(n);
  static const FgPositivity fg = certify_f_g_positivity();

  PinchCertificate c;
  c.n = n;
  c.t = t;
  c.branch = branch_of(t);
  const EpsOptimum opt = optimize_eps(n, t);
  c.epsilon = opt.epsilon;
  c.a1 = opt.a1;
  c.a2 = opt.a2;
  c.h = opt.h;
  c.attaining_locus = opt.attaining_locus;
  c.s = solve_s(c.a1, c.a2, Rational(n));

  const Bindings params{{Var::n, RationalFunc(Rational(n))}, {Var::t, RationalFunc(t)},
                        {Var::a1, RationalFunc(c.a1)}, {Var::a2, RationalFunc(c.a2)}};
  c.q0 = ca::substitute(build_q0(), params);
  c.q1 = ca::substitute(build_q1(), params);
  c.q2 = ca::substitute(build_q2(), params);
  std::map<Var, Rational> all{{Var::n, Rational(n)}, {Var::t, t}, {Var::a1, c.a1},
                              {Var::a2, c.a2},       {Var::s, c.s}, {Var::eps, c.epsilon}};
  c.q_rrc = value_at(build_q_rrc(), all);
  c.q3rc = value_at(build_q3rc(), all);

  c.b = q2_min_over_b(n, t, c.a1, c.a2);
  if (c.branch != Branch::above) c.closed_form_b = verify_closed_form_b(n, t);
  c.requires_constant_scalar = !c.b.feasible;
  c.bach_flat = n == 4 && t == Rational(-1, 3);

  if (c.branch == Branch::critical) c.notes.push_back("t = -1/2: both threshold formulas give 0");
  if (c.requires_constant_scalar)
    c.notes.push_back("Q2 has no real zero in b at the optimal (a1, a2); the threshold needs constant scalar curvature");
  if (n == 4 && c.branch == Branch::above && !c.bach_flat)
    c.notes.push_back("n = 4, t != -1/3: critical metrics have constant scalar curvature, so the hypothesis holds");
  if (c.bach_flat)
    c.notes.push_back("Bach-flat case (n = 4, t = -1/3): excluded from the four-dimensional statement; constant scalar curvature must be assumed");
  if (n == 4) c.notes.push_back("RP^4 carries the same local curvature data as S^4; pointwise checks do not separate them");

  c.certificates = opt.certificates;
  c.certificates.insert(c.certificates.end(), fg.certificates.begin(), fg.certificates.end());

  const Rational h_target = c.branch == Branch::below ? Rational(-1, 2) : (c.branch == Branch::above ? 1 : 0);
  c.checks.push_back({"epsilon_matches_threshold", c.epsilon == theorem_threshold(n, t)});
  c.checks.push_back({"h_at_range_endpoint", c.h == h_target});
  c.checks.push_back({"s_in_unit_interval", c.s > 0 && c.s < 1});
  c.checks.push_back({"q3rc_vanishes", c.q3rc == 0});
  c.checks.push_back({"q_rrc_vanishes", c.q_rrc == 0});
  c.checks.push_back({"sos_certificates", std::all_of(c.certificates.begin(), c.certificates.end(),
                                                      [](const auto& x) { return check(x).ok(); })});
  c.checks.push_back({"f_g_positivity", fg.verified()});
  c.checks.push_back({"feasibility_matches_branch", c.b.feasible == (c.branch != Branch::above)});
  if (c.branch == Branch::above)
    c.checks.push_back({"infeasible_for_all_n_and_t_above", q2_min_positive_on(c.a1, c.a2, Rational(-1, 2))});
  if (c.b.zero) c.checks.push_back({"b_zero_residual", abs(c.b.zero_residual) < residual_tolerance()});
  if (c.closed_form_b) c.checks.push_back({"closed_form_b_residual", c.closed_form_b->passed});
  return c;
}

}  // namespace pinchcert::proof
