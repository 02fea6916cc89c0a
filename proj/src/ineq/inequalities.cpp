#include "pinchcert/ineq/inequalities.hpp"

#include <cmath>

#include "pinchcert/ca/text.hpp"
#include "pinchcert/proof/coefficients.hpp"

namespace pinchcert::ineq {

using ca::RationalFunc;
using ca::Var;

namespace {

// Each inequality reads quad <= c_R * R |r|^2 + c_cubic * cubic, with
// coefficients in (n, eps, s).
struct Coefficients {
  RationalFunc c_R;
  RationalFunc c_cubic;
};

RationalFunc v(Var x) { return RationalFunc::variable(x); }
RationalFunc q(long p, long r = 1) { return RationalFunc(ca::Rational(p, r)); }

const Coefficients& first() {
  static const Coefficients c{(q(1) - v(Var::n).pow(2) * v(Var::eps)) / v(Var::n), q(1)};
  return c;
}

const Coefficients& second() {
  static const Coefficients c = [] {
    const RationalFunc n = v(Var::n), eps = v(Var::eps);
    return Coefficients{(n * n - q(4) * n + q(2) - n * n * (n - q(2)) * (n - q(3)) * eps) / (q(2) * n), -(n - q(1))};
  }();
  return c;
}

const Coefficients& combined() {
  static const Coefficients c = [] {
    const RationalFunc n = v(Var::n), eps = v(Var::eps), s = v(Var::s);
    return Coefficients{second().c_R - (n - q(4)) / q(2) * (q(1) - n * (n - q(1)) * eps) * s, -(n - q(1) - n * s)};
  }();
  return c;
}

double eval(const RationalFunc& f, int n, double eps, double s) {
  std::array<double, ca::kNumVars> p{};
  p[ca::index_of(Var::n)] = n;
  p[ca::index_of(Var::eps)] = eps;
  p[ca::index_of(Var::s)] = s;
  return ca::evaluate_as(f, p, [](const ca::Rational& x) { return x.convert_to<double>(); });
}

IneqReport report(const char* name, const Coefficients& c, const Evaluated& e, double eps, std::optional<double> s) {
  IneqReport r;
  r.name = name;
  r.n = e.n;
  r.eps = eps;
  r.s = s;
  r.witness = e.witness;
  const double sv = s.value_or(0.0);
  r.lhs = e.quad;
  r.rhs = eval(c.c_R, e.n, eps, sv) * e.scalar * e.r_norm2 + eval(c.c_cubic, e.n, eps, sv) * e.cubic;
  r.slack = r.rhs - r.lhs;
  return r;
}

}  // namespace

nlohmann::ordered_json to_json(const IneqReport& r) {
  nlohmann::ordered_json params{{"n", r.n}, {"eps", r.eps}};
  params["s"] = r.s ? nlohmann::ordered_json(*r.s) : nlohmann::ordered_json(nullptr);
  return {{"name", r.name}, {"lhs", r.lhs},     {"rhs", r.rhs},
          {"slack", r.slack}, {"params", params}, {"witness", r.witness}};
}

void write_jsonl(std::ostream& os, const std::vector<IneqReport>& reports) {
  for (const auto& r : reports) os << to_json(r).dump() << '\n';
}

namespace {

Evaluated contract(const Curv<double>& R, const Sym<double>& g, std::string witness) {
  Evaluated e;
  e.n = R.dim();
  e.witness = std::move(witness);
  const Sym<double> ric = tensor::ricci(R, g);
  e.scalar = tensor::trace(ric, g);
  const Sym<double> r = ric - (e.scalar / e.n) * g;
  e.r_norm2 = tensor::norm2(r, g);
  const auto c = tensor::contractions(R, r, g);
  e.quad = c.quad;
  e.cubic = c.cubic;
  return e;
}

}  // namespace

Evaluated evaluate(const Curv<double>& R, const Sym<double>& g, const tensor::MinSectionalOptions& opt,
                   std::string witness) {
  Evaluated e = contract(R, g, std::move(witness));
  e.sec_min = tensor::min_sectional(R, g, opt).value;
  return e;
}

Evaluated evaluate(const Curv<double>& R, const Sym<double>& g, double sec_min, std::string witness) {
  Evaluated e = contract(R, g, std::move(witness));
  e.sec_min = sec_min;
  return e;
}

Evaluated evaluate_exact(const Curv<double>& R, const Sym<double>& g, double sec_min, std::string witness) {
  Evaluated e = contract(R, g, std::move(witness));
  e.sec_min = sec_min;
  e.sec_min_exact = true;
  return e;
}

void require_pinching(const Evaluated& e, double eps) {
  // rounding slack only: eps from pinching_for_test lands exactly on the bound
  const double bound = e.sec_min - (e.sec_min_exact ? 0.0 : tensor::sectional_margin(e.sec_min));
  if (eps * e.scalar - bound > 1e-14 * (std::fabs(bound) + std::fabs(eps * e.scalar)))
    throw HypothesisUnverified("Sec >= eps R is not verified for this tensor");
}

IneqReport prop21_first(const Evaluated& e, double eps) {
  require_pinching(e, eps);
  return report("prop21_first", first(), e, eps, std::nullopt);
}

IneqReport prop21_second(const Evaluated& e, double eps) {
  require_pinching(e, eps);
  return report("prop21_second", second(), e, eps, std::nullopt);
}

IneqReport cor_sec(const Evaluated& e, double eps, double s) {
  if (!(s >= 0 && s <= 1)) throw SOutOfRange("s must lie in [0, 1]");
  require_pinching(e, eps);
  return report("cor_sec", combined(), e, eps, s);
}

IneqReport prop21_first(const Curv<double>& R, const Sym<double>& g, double eps) {
  return prop21_first(evaluate(R, g), eps);
}
IneqReport prop21_second(const Curv<double>& R, const Sym<double>& g, double eps) {
  return prop21_second(evaluate(R, g), eps);
}
IneqReport cor_sec(const Curv<double>& R, const Sym<double>& g, double eps, double s) {
  if (!(s >= 0 && s <= 1)) throw SOutOfRange("s must lie in [0, 1]");
  return cor_sec(evaluate(R, g), eps, s);
}

EndpointIdentities cor_sec_endpoints() {
  const auto at_s = [](const RationalFunc& f, long value) {
    return ca::substitute(f, ca::Bindings{{Var::s, RationalFunc(value)}});
  };
  const Coefficients& c = combined();
  EndpointIdentities out;
  out.s0_is_second = at_s(c.c_R, 0) == second().c_R && at_s(c.c_cubic, 0) == second().c_cubic;
  out.s1_is_first = at_s(c.c_R, 1) == first().c_R && at_s(c.c_cubic, 1) == first().c_cubic;
  const RationalFunc s = v(Var::s);
  const auto mix = [&](const RationalFunc& a, const RationalFunc& b) { return s * a + (q(1) - s) * b; };
  out.convex_combination =
      c.c_R == mix(first().c_R, second().c_R) && c.c_cubic == mix(first().c_cubic, second().c_cubic);
  return out;
}

IdentityPair f_norm_identity(const Three<double>& T, const FParams& p) {
  const int n = T.dim();
  if (n < 3) throw tensor::DimensionTooSmall("the Bianchi factor 2n/(n-2) needs n >= 3");
  std::vector<double> dR(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) dR[i] += T(i, k, k);
    dR[i] *= 2.0 * n / (n - 2);
  }
  const auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };

  IdentityPair out;
  double t2 = 0, cross = 0, grad2 = 0;
  for (int i = 0; i < n; ++i) {
    grad2 += dR[i] * dR[i];
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double F = T(i, j, k) + p.a1 * T(i, k, j) + p.a2 * T(j, k, i) + p.b1 * dR[k] * d(i, j) +
                         p.b2 * dR[j] * d(i, k) + p.b3 * dR[i] * d(j, k);
        out.direct += F * F;
        t2 += T(i, j, k) * T(i, j, k);
        cross += T(i, j, k) * T(i, k, j);
      }
  }
  static const RationalFunc q0 = proof::build_q0();
  std::array<double, ca::kNumVars> point{};
  point[ca::index_of(Var::a1)] = p.a1;
  point[ca::index_of(Var::a2)] = p.a2;
  point[ca::index_of(Var::b1)] = p.b1;
  point[ca::index_of(Var::b2)] = p.b2;
  point[ca::index_of(Var::b3)] = p.b3;
  point[ca::index_of(Var::n)] = n;
  const double Q0 = ca::evaluate_as(q0, point, [](const ca::Rational& x) { return x.convert_to<double>(); });
  out.formula = (1 + p.a1 * p.a1 + p.a2 * p.a2) * t2 + 2 * (p.a1 + p.a2 + p.a1 * p.a2) * cross + Q0 * grad2;
  return out;
}

IdentityPair weitzenboeck_contract(const Curv<double>& R, const Sym<double>& g, const Sym<double>& r,
                                   const Sym<double>& hess, double t) {
  const int n = R.dim();
  tensor::detail::require_same(n, g.dim());
  tensor::detail::require_same(n, r.dim());
  tensor::detail::require_same(n, hess.dim());
  const double tr_r = tensor::trace(r, g);
  if (std::fabs(tr_r) > 1e-10 * (1 + r.max_abs())) throw NonTracelessInput("r must be traceless");

  const Sym<double> gi = tensor::metric_inverse(g);
  const double sc = tensor::scalar(R, g);
  const double lap = tensor::trace(hess, g);
  const double r2 = tensor::norm2(r, g);
  // r^kl
  std::vector<double> up(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) up[static_cast<std::size_t>(k) * n + l] += gi(k, a) * r(a, b) * gi(b, l);

  const Sym<double> E = Sym<double>::from_function(n, [&](int i, int j) {
    double curv = 0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) curv += R(i, k, j, l) * up[static_cast<std::size_t>(k) * n + l];
    return (1 + 2 * t) * hess(i, j) - (1 + 2 * t) / n * lap * g(i, j) - 2 * curv - (2 + 2 * n * t) / n * sc * r(i, j) +
           2.0 / n * r2 * g(i, j);
  });

  IdentityPair out;
  double pairing = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.direct += E(i, j) * up[static_cast<std::size_t>(i) * n + j];
      pairing += hess(i, j) * up[static_cast<std::size_t>(i) * n + j];
    }
  const auto c = tensor::contractions(R, r, g);
  out.formula = (1 + 2 * t) * pairing - 2 * c.quad - (2 + 2 * n * t) / n * sc * r2;
  return out;
}

}  // namespace pinchcert::ineq
