#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pinchcert/ca/text.hpp"
#include "pinchcert/proof/certificate_json.hpp"

using namespace pinchcert;
using namespace pinchcert::proof;
using ca::Bindings;
using ca::parse;

namespace {

RationalFunc rf(const Rational& q) { return RationalFunc(q); }

Rational at(const RationalFunc& f, const std::map<Var, Rational>& point) {
  return ca::substitute(f, point).constant_value();
}

long double ld(const Rational& q) { return q.convert_to<long double>(); }

struct RationalGen {
  std::mt19937_64 rng;
  explicit RationalGen(std::uint64_t seed) : rng(seed) {}
  Rational next(long range = 20, long den = 7) {
    const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range * den + 1)) - range * den;
    const long q = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(den));
    return Rational(p, q);
  }
};

Rational h_exact(const Rational& a1, const Rational& a2) { return (a1 + a2 + a1 * a2) / (1 + a1 * a1 + a2 * a2); }

}  // namespace

TEST_CASE("q0 examples") {
  const RationalFunc q0 = build_q0();
  const Bindings zero_b{{Var::b1, rf(0)}, {Var::b2, rf(0)}, {Var::b3, rf(0)}};
  CHECK(ca::substitute(q0, zero_b).is_zero());
  // (n-2)/n * 2 + 3n + 6 at n = 4
  CHECK(at(q0, {{Var::a1, 0}, {Var::a2, 0}, {Var::b1, 1}, {Var::b2, 1}, {Var::b3, 1}, {Var::n, 4}}) == 19);

  // b-Hessian: 2n on the diagonal, 2 off it
  const std::array<Var, 3> b{Var::b1, Var::b2, Var::b3};
  const RationalFunc n = RationalFunc::variable(Var::n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const RationalFunc second = ca::derivative(ca::derivative(q0, b[i]), b[j]);
      CHECK(second == (i == j ? RationalFunc(2) * n : RationalFunc(2)));
    }
}

TEST_CASE("coefficient examples and collected forms") {
  const RationalFunc q3 = build_q3rc();
  CHECK(at(q3, {{Var::s, 1}, {Var::a1, 0}, {Var::a2, 0}, {Var::n, 7}}) == -2);
  CHECK(ca::equivalent(q3, parse("2*(a1+a2+a1*a2)/(1+a1^2+a2^2)*n*(1-s) + 2*(n-1-n*s)")));

  CHECK(q_rrc_without_s() ==
        parse("-1 - 2*t + ((2*n*(a1+a2+a1*a2))/(1+a1^2+a2^2) + 4 + n*(n-3))*eps"));

  CHECK(ca::substitute(build_q2(), Bindings{{Var::t, rf(Rational(-1, 2))},
                                            {Var::a1, rf(0)},
                                            {Var::a2, rf(0)},
                                            {Var::b1, rf(0)},
                                            {Var::b2, rf(0)},
                                            {Var::b3, rf(0)}})
            .is_zero());

  // Q1 and Q2 against the floating-point transcription
  RationalGen gen(11);
  for (int k = 0; k < 50; ++k) {
    const Rational a1 = gen.next(3), a2 = gen.next(3), b1 = gen.next(2), b2 = gen.next(2), b3 = gen.next(2),
                   t = gen.next(2);
    const int n = 3 + k % 6;
    const Rational exact = at(build_q2(), {{Var::a1, a1}, {Var::a2, a2}, {Var::b1, b1}, {Var::b2, b2},
                                           {Var::b3, b3}, {Var::n, n}, {Var::t, t}});
    const long double approx = oracle::q2(ld(a1), ld(a2), ld(b1), ld(b2), ld(b3), n, ld(t));
    REQUIRE(std::abs(ld(exact) - approx) < 1e-12L * (1 + std::abs(approx)));
  }
}

TEST_CASE("solve_s examples and range") {
  CHECK(solve_s(0, 0, 4) == Rational(3, 4));
  CHECK(solve_s(1, 1, 4) == Rational(7, 8));
  CHECK(ca::equivalent(symbolic_s(), parse("(n*(1+(a1+a2+a1*a2)/(1+a1^2+a2^2)) - 1)/(n*(1+(a1+a2+a1*a2)/(1+a1^2+a2^2)))")));

  RationalGen gen(2024);
  for (int n = 3; n <= 12; ++n)
    for (int k = 0; k < 60; ++k) {
      const Rational a1 = gen.next(), a2 = gen.next();
      const Rational s = solve_s(a1, a2, n);
      REQUIRE(s > 0);
      REQUIRE(s < 1);
      const Rational x = n * (1 + h_exact(a1, a2));
      REQUIRE(s == (x - 1) / x);
      REQUIRE(at(build_q3rc(), {{Var::a1, a1}, {Var::a2, a2}, {Var::n, n}, {Var::s, s}}) == 0);
    }
}

TEST_CASE("eps_bound examples") {
  CHECK(eps_bound(1, 1, 4, Rational(-1, 3)) == Rational(1, 48));
  CHECK(eps_bound(-2, 1, 4, -1) == Rational(-1, 4));
  CHECK(eps_bound(Rational(3, 7), -5, 6, Rational(-1, 2)) == 0);

  RationalGen gen(77);
  for (int k = 0; k < 200; ++k) {
    const Rational a1 = gen.next(), a2 = gen.next(), t = gen.next(3);
    const int n = 3 + k % 8;
    const Rational expected = (1 + 2 * t) / (2 * n * h_exact(a1, a2) + 4 + n * (n - 3));
    REQUIRE(eps_bound(a1, a2, n, t) == expected);
  }
}

TEST_CASE("h range and the two identities") {
  const Poly a1 = Poly::variable(Var::a1), a2 = Poly::variable(Var::a2);
  const Poly D = Poly(1) + a1 * a1 + a2 * a2, P = a1 + a2 + a1 * a2;
  CHECK(Poly(2) * P + D == (a1 + a2 + Poly(1)).pow(2));
  CHECK(Poly(2) * (D - P) == (a1 - a2).pow(2) + (a1 - Poly(1)).pow(2) + (a2 - Poly(1)).pow(2));

  RationalGen gen(1000);
  for (int k = 0; k < 1000; ++k) {
    const Rational h = h_exact(gen.next(), gen.next());
    REQUIRE(h >= Rational(-1, 2));
    REQUIRE(h <= 1);
  }
}

TEST_CASE("sos certificate checks reject corrupted witnesses") {
  const Poly a1 = Poly::variable(Var::a1), a2 = Poly::variable(Var::a2);
  auto cert = make_sos_certificate("line", parse("2*(a1+a2+a1*a2) + 1 + a1^2 + a2^2"), {{1, a1 + a2 + Poly(1)}});
  CHECK(check(cert).ok());
  auto bad = cert;
  bad.squares[0].base = a1 + a2;
  CHECK_FALSE(check(bad).identity);
  bad = cert;
  bad.strict = true;
  CHECK_FALSE(check(bad).ok());
  bad = cert;
  bad.squares.push_back({Poly(-1), Poly(0)});
  bad.squares.push_back({Poly::variable(Var::n) - Poly(5), Poly(0)});
  bad.domain = {{Var::n, Rational(3)}};
  CHECK_FALSE(check(bad).weights_nonnegative);
  CHECK_THROWS_AS(make_sos_certificate("wrong", parse("a1^2 + 1"), {{1, a1}}), std::logic_error);
  CHECK(check(make_sos_certificate("strict", parse("a1^2 + 1"), {{1, a1}, {1, Poly(1)}}, {}, true)).ok());
  (void)a2;
}

TEST_CASE("optimize_eps examples") {
  auto o = optimize_eps(4, Rational(-1, 3));
  CHECK(o.a1 == 1);
  CHECK(o.a2 == 1);
  CHECK(o.epsilon == Rational(1, 48));
  o = optimize_eps(4, Rational(-1, 2));
  CHECK(o.a1 == 0);
  CHECK(o.a2 == 0);
  CHECK(o.epsilon == 0);
  o = optimize_eps(5, -1);
  CHECK(o.a1 == -2);
  CHECK(o.a2 == 1);
  CHECK(o.epsilon == Rational(-1, 9));
  for (const auto& c : o.certificates) {
    INFO(c.name);
    CHECK(check(c).ok());
  }
  CHECK_THROWS_AS(optimize_eps(2, 0), std::invalid_argument);
}

TEST_CASE("optimize_eps is not beaten on a dense grid") {
  for (int n = 3; n <= 8; ++n)
    for (const Rational& t : {Rational(-2), Rational(-1), Rational(-1, 2), Rational(-1, 3), Rational(0), Rational(1)}) {
      const EpsOptimum o = optimize_eps(n, t);
      REQUIRE(o.epsilon == theorem_threshold(n, t));
      long double best = INFINITY;
      for (int i = 0; i <= 400; ++i)
        for (int j = 0; j <= 400; ++j)
          best = std::min(best, oracle::eps(-10 + 0.05L * i, -10 + 0.05L * j, n, ld(t)));
      REQUIRE(best >= ld(o.epsilon) - 1e-9L);
    }
}

TEST_CASE("f and g minima, symbolic in n") {
  const FgPositivity fg = certify_f_g_positivity();
  CHECK(fg.f.point[0] == rf(Rational(-1, 3)));
  CHECK(fg.f.point[1] == rf(Rational(-1, 3)));
  CHECK(fg.f.value == rf(Rational(2, 3)));
  CHECK(fg.g.point[0] == parse("-n/(3*n-2)"));
  CHECK(fg.g.point[1] == parse("-n/(3*n-2)"));
  CHECK(fg.g.value == parse("(2*n^2 - 5*n + 2)/(3*n - 2)"));
  CHECK(fg.g.hessian_det == parse("3*n^2 - 8*n + 4"));
  CHECK(at(fg.g.value, {{Var::n, 3}}) == Rational(5, 7));
  CHECK(fg.f.stationary);
  CHECK(fg.g.stationary);
  CHECK(fg.verified());
  // direct evaluations
  CHECK(at(RationalFunc(f_poly()), {{Var::a1, Rational(-1, 3)}, {Var::a2, Rational(-1, 3)}}) == Rational(2, 3));
  for (int n = 3; n <= 12; ++n) {
    const Rational m = Rational(-n, 3 * n - 2);
    REQUIRE(at(RationalFunc(g_poly()), {{Var::a1, m}, {Var::a2, m}, {Var::n, n}}) ==
            Rational(2 * n * n - 5 * n + 2, 3 * n - 2));
  }
}

TEST_CASE("q2 minimum over b") {
  const Q2Minimum sym = q2_min_over_b(Bindings{});
  const RationalFunc D = metric_factor();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(sym.hessian[i][j] ==
            (i == j ? RationalFunc(2) * RationalFunc::variable(Var::n) / D : RationalFunc(2) / D));

  // a1 = a2 = 1, symbolic (n, t)
  const Q2Minimum one = q2_min_over_b(Bindings{{Var::a1, rf(1)}, {Var::a2, rf(1)}});
  CHECK(one.value == parse("(n-2)*((n+2)*t + n)/(n*(n+2))"));
  CHECK(q2_min_positive_on(1, 1, Rational(-1, 2)));
  CHECK_FALSE(q2_min_positive_on(-2, 1, -1));
  for (int n = 3; n <= 10; ++n)
    for (const Rational& t : {Rational(-49, 100), Rational(-1, 3), Rational(0), Rational(1)})
      REQUIRE(q2_min_over_b(n, t, 1, 1).min_value > 0);

  for (int n = 3; n <= 6; ++n)
    for (const Rational& t : {Rational(-1), Rational(-2), Rational(-5)}) {
      const BFeasibility f = q2_min_over_b(n, t, -2, 1);
      REQUIRE(f.feasible);
      REQUIRE(f.zero.has_value());
      REQUIRE(abs(f.zero_residual) < HighPrec("1e-40"));
    }
  CHECK(q2_min_over_b(3, Rational(-1, 2), 0, 0).feasible);
  CHECK_THROWS_AS(q2_min_over_b(Bindings{{Var::b1, rf(0)}}), std::invalid_argument);
}

TEST_CASE("q2 minimum matches a brute-force grid") {
  RationalGen gen(515);
  for (int k = 0; k < 10; ++k) {
    const int n = 3 + k % 6;
    const Rational t = gen.next(2, 4), a1 = gen.next(2, 3), a2 = gen.next(2, 3);
    const BFeasibility f = q2_min_over_b(n, t, a1, a2);
    for (const auto& b : f.b_star) REQUIRE(abs(b) < 4);
    const long double grid = oracle::q2_grid_min(ld(a1), ld(a2), n, ld(t));
    // grid error: half the largest Hessian eigenvalue times the squared distance to a grid point
    const long double resolution = 0.5L * 2 * (n + 2) * 3 * 0.005L * 0.005L;
    INFO("n=" << n << " t=" << t << " a=(" << a1 << ", " << a2 << ")");
    CHECK(grid >= ld(f.min_value) - 1e-12L);
    CHECK(grid - ld(f.min_value) <= resolution + 1e-12L);
  }
}

TEST_CASE("closed-form b values solve Q2 = 0") {
  for (int n = 3; n <= 6; ++n)
    for (const Rational& t : {Rational(-1, 2), Rational(-1), Rational(-2), Rational(-5)}) {
      const ClosedFormB c = verify_closed_form_b(n, t);
      INFO("n=" << n << " t=" << t);
      REQUIRE(c.passed);
      REQUIRE(c.radicand >= 0);
      const long double approx = oracle::q2(ld(c.a1), ld(c.a2), c.b[0].convert_to<long double>(),
                                            c.b[1].convert_to<long double>(), c.b[2].convert_to<long double>(), n,
                                            ld(t));
      REQUIRE(std::abs(approx) < 1e-15L);
    }
  CHECK_THROWS_AS(verify_closed_form_b(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_closed_form_b(2, -1), std::invalid_argument);

  // the radicand stays nonnegative for every t < -1/2
  for (int n = 3; n <= 30; ++n)
    for (int k = 1; k <= 50; ++k) REQUIRE(verify_closed_form_b(n, Rational(-1, 2) - Rational(k, 17)).radicand >= 0);

  // so NegativeRadicand is only reachable by construction
  const NegativeRadicand e(5, Rational(-3, 4), Rational(-2));
  CHECK(e.n == 5);
  CHECK(e.t == Rational(-3, 4));
  CHECK(e.radicand == -2);
  CHECK(std::string(e.what()).find("negative radicand") == 0);
}

TEST_CASE("theorem_lookup") {
  auto c = theorem_lookup(4, Rational(-1, 3));
  CHECK(c.epsilon == Rational(1, 48));
  CHECK(c.requires_constant_scalar);
  CHECK(c.bach_flat);
  CHECK(c.valid());
  c = theorem_lookup(4, -1);
  CHECK(c.epsilon == Rational(-1, 4));
  CHECK_FALSE(c.requires_constant_scalar);
  CHECK(c.a1 == -2);
  c = theorem_lookup(4, 0);
  CHECK(c.epsilon == Rational(1, 16));
  CHECK(c.requires_constant_scalar);
  c = theorem_lookup(4, Rational(-1, 2));
  CHECK(c.epsilon == 0);
  CHECK_FALSE(c.requires_constant_scalar);

  for (int n = 3; n <= 8; ++n)
    for (const Rational& t : {Rational(-5), Rational(-1), Rational(-1, 2), Rational(-1, 4), Rational(2)}) {
      const PinchCertificate cert = theorem_lookup(n, t);
      for (const auto& ch : cert.checks) {
        INFO(n << " " << t << " " << ch.name);
        REQUIRE(ch.passed);
      }
      REQUIRE(cert.requires_constant_scalar == (t > Rational(-1, 2)));
      REQUIRE(!cert.b.feasible == cert.requires_constant_scalar);
    }
}

TEST_CASE("certificate json is deterministic") {
  const auto a = to_json(theorem_lookup(4, -1)).dump(2);
  const auto b = to_json(theorem_lookup(4, -1)).dump(2);
  CHECK(a == b);
  const auto j = to_json(theorem_lookup(3, Rational(-1, 2)));
  CHECK(j["schema_version"] == kCertificateSchemaVersion);
  CHECK(j["t"] == "-1/2");
  CHECK(j["epsilon_threshold"] == "0/1");
  CHECK(j["parameters"]["a1"] == "0/1");
  CHECK(j["b_feasibility"]["status"] == "feasible");
  CHECK(j["valid"] == true);
  const auto k = to_json(theorem_lookup(4, Rational(-1, 3)));
  CHECK(k["b_feasibility"]["status"] == "infeasible");
  CHECK(k["parameters"]["s"] == "7/8");
  // canonical text parses back to the stored function
  CHECK(parse(k["q_coefficients"]["q2"].get<std::string>()) == theorem_lookup(4, Rational(-1, 3)).q2);
}
