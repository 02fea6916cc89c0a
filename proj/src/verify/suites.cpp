#include "pinchcert/verify/suites.hpp"

#include <algorithm>
#include <mutex>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "pinchcert/models/model_spaces.hpp"

namespace pinchcert::verify {

using tensor::Curv;
using tensor::Sym;
using SymD = Sym<double>;

bool SuiteResult::ok() const {
  return violations.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckSummary& c) { return c.failures == 0; });
}

tensor::Rng sample_rng(std::uint64_t seed, int n, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(k >> 32)};
  return tensor::Rng(seq);
}

namespace {

// Runs job(i) for i in [0, count); every job writes only its own slot.
template <class Job>
void parallel_for(std::size_t count, int threads, Job job) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<int> dims_or(const SuiteConfig& cfg, std::vector<int> fallback) {
  std::vector<int> d = cfg.dims.empty() ? std::move(fallback) : cfg.dims;
  for (int n : d)
    if (n < 3) throw std::invalid_argument("dimensions must be at least 3");
  return d;
}

std::string witness(std::uint64_t seed, int n, std::uint64_t k) {
  return "seed=" + std::to_string(seed) + "/dim=" + std::to_string(n) + "/sample=" + std::to_string(k);
}

// Error-style check: fails when err > tol.
void add_error(CheckSummary& c, double err, double tol) {
  ++c.count;
  if (!(err <= tol)) ++c.failures;
  c.worst = std::max(c.worst, err);
}

// Slack-style check: fails when slack < -tol.
void add_slack(CheckSummary& c, const ineq::IneqReport& r, double tol, std::vector<ineq::IneqReport>& out) {
  if (c.count == 0 || r.slack < c.worst) c.worst = r.slack + 0.0;  // no -0 in reports
  ++c.count;
  if (r.violated(tol)) {
    ++c.failures;
    out.push_back(r);
  }
}

struct IdentityErrors {
  double recompose = 0, norm_split = 0, f_norm = 0, weitzenboeck = 0;
};

IdentityErrors identity_sample(int n, tensor::Rng& rng) {
  IdentityErrors e;
  const SymD g = rng() % 2 ? SymD::identity(n) : tensor::random_metric(n, rng);
  const Curv<double> R = tensor::random_curvature(n, rng);
  const auto d = tensor::decompose(R, g);
  e.recompose = (tensor::recompose(d, g) - R).max_abs() / (1 + R.max_abs());
  const double full = tensor::norm2(R, g);
  const double split = tensor::norm2(d.weyl, g) + 4.0 / (n - 2) * tensor::norm2(d.traceless_ricci, g) +
                       2.0 * d.scalar * d.scalar / (n * (n - 1));
  e.norm_split = std::fabs(full - split) / (1 + std::fabs(full));

  std::uniform_real_distribution<double> u(-2, 2);
  const auto T = tensor::random_three(n, rng);
  const ineq::FParams p{u(rng), u(rng), u(rng), u(rng), u(rng)};
  const auto f = ineq::f_norm_identity(T, p);
  e.f_norm = std::fabs(f.direct - f.formula);

  const SymD x = tensor::random_sym(n, rng);
  const SymD r = x - (tensor::trace(x, g) / n) * g;
  const auto w = ineq::weitzenboeck_contract(R, g, r, tensor::random_sym(n, rng), u(rng));
  e.weitzenboeck = std::fabs(w.direct - w.formula) / (1 + std::fabs(w.formula));
  return e;
}

}  // namespace

SuiteResult run_identities(const SuiteConfig& cfg) {
  const std::vector<int> dims = dims_or(cfg, {3, 4, 5, 6});
  const int per_dim = cfg.samples > 0 ? cfg.samples : 500;
  std::vector<IdentityErrors> errs(dims.size() * per_dim);
  parallel_for(errs.size(), cfg.threads, [&](std::size_t i) {
    const int n = dims[i / per_dim];
    tensor::Rng rng = sample_rng(cfg.seed, n, i % per_dim);
    errs[i] = identity_sample(n, rng);
  });

  SuiteResult out;
  out.suite = "identities";
  CheckSummary rec{"decomposition_round_trip"}, split{"decomposition_norm_split"}, fn{"f_norm_identity"},
      wz{"weitzenboeck_contract"};
  for (const auto& e : errs) {
    add_error(rec, e.recompose, cfg.tol.decomposition);
    add_error(split, e.norm_split, cfg.tol.decomposition);
    add_error(fn, e.f_norm, cfg.tol.f_norm);
    add_error(wz, e.weitzenboeck, cfg.tol.contraction);
  }
  out.checks = {rec, split, fn, wz};
  return out;
}

SuiteResult run_models(const SuiteConfig& cfg) {
  SuiteResult out;
  out.suite = "models";
  CheckSummary inv{"exact_invariants"}, sec{"sectional_extremes"}, first{"prop21_first"}, second{"prop21_second"},
      comb{"cor_sec"}, euler{"s4_euler_integrand"};
  for (const auto& m : models::standard_fixtures()) {
    const auto ric = tensor::ricci(m.curvature, m.metric);
    std::vector<ca::Rational> diag;
    bool diagonal = true;
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) {
        if (i == j) diag.push_back(ric(i, i));
        else if (ric(i, j) != 0) diagonal = false;
      }
    std::sort(diag.begin(), diag.end());
    const auto d = tensor::decompose(m.curvature, m.metric);
    const bool exact_ok = diagonal && diag == m.known.ricci_eigenvalues && d.scalar == m.known.scalar &&
                          (d.traceless_ricci == Sym<ca::Rational>::zero(m.dim)) == m.known.einstein &&
                          (d.weyl == Curv<ca::Rational>::zero(m.dim)) == m.known.weyl_zero &&
                          m.curvature.symmetry_defect() == 0;
    add_error(inv, exact_ok ? 0.0 : 1.0, 0.0);

    const auto R = tensor::to_double(m.curvature);
    const auto g = tensor::to_double(m.metric);
    const double lo = tensor::to_double(m.known.sec_min), hi = tensor::to_double(m.known.sec_max);
    add_error(sec, std::max(std::fabs(tensor::min_sectional(R, g).value - lo),
                            std::fabs(tensor::max_sectional(R, g).value - hi)),
              cfg.tol.inequality);

    if (m.known.scalar > 0) {
      const double eps = tensor::to_double(m.known.sec_min / m.known.scalar);
      const auto e = ineq::evaluate_exact(R, g, lo, m.name);
      add_slack(first, ineq::prop21_first(e, eps), cfg.tol.inequality, out.violations);
      add_slack(second, ineq::prop21_second(e, eps), cfg.tol.inequality, out.violations);
      for (double s : {0.0, 0.25, 0.5, 0.75, 1.0})
        add_slack(comb, ineq::cor_sec(e, eps, s), cfg.tol.inequality, out.violations);
    }
  }
  // (|W|^2 - 2|Ric|^2 + 2R^2/3) Vol(S^4(r)) = 32 pi^2 chi(S^4)
  for (const ca::Rational& r : {ca::Rational(1, 2), ca::Rational(1), ca::Rational(2)}) {
    const auto m = models::round_sphere(4, r);
    const auto d = tensor::decompose(m.curvature, m.metric);
    const ca::Rational integrand = tensor::norm2(d.weyl, m.metric) -
                                   2 * tensor::norm2(tensor::ricci(m.curvature, m.metric), m.metric) +
                                   ca::Rational(2, 3) * d.scalar * d.scalar;
    const double vol = 8 * std::numbers::pi * std::numbers::pi / 3 * std::pow(tensor::to_double(r), 4);
    const double target = 64 * std::numbers::pi * std::numbers::pi;
    add_error(euler, std::fabs(tensor::to_double(integrand) * vol / target - 1), 1e-9);
  }
  out.checks = {inv, sec, first, second, comb, euler};
  return out;
}

namespace {

struct InequalitySample {
  std::vector<ineq::IneqReport> reports;  // first, second, then the s draws
};

InequalitySample inequality_sample(const SuiteConfig& cfg, int n, std::uint64_t k) {
  tensor::Rng rng = sample_rng(cfg.seed, n, k);
  tensor::MinSectionalOptions opt;
  opt.seed = rng();
  const SymD g = SymD::identity(n);
  // R > 0 is part of the hypotheses; redraw otherwise
  tensor::PositiveSample s = tensor::random_positive_curvature(n, rng, opt);
  while (!(tensor::scalar(s.R, g) > 0)) s = tensor::random_positive_curvature(n, rng, opt);
  const auto e = ineq::evaluate(s.R, g, s.sec_min, witness(cfg.seed, n, k));
  const double eps = tensor::pinching_for_test(e.sec_min, e.scalar);

  InequalitySample out;
  out.reports.push_back(ineq::prop21_first(e, eps));
  out.reports.push_back(ineq::prop21_second(e, eps));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int j = 0; j < cfg.s_per_sample; ++j) out.reports.push_back(ineq::cor_sec(e, eps, unit(rng)));
  return out;
}

}  // namespace

SuiteResult run_inequalities(const SuiteConfig& cfg) {
  const std::vector<int> dims = dims_or(cfg, {3, 4, 5, 6});
  const int total = cfg.samples > 0 ? cfg.samples : 1000;
  std::vector<std::pair<int, std::uint64_t>> jobs;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int count = total / static_cast<int>(dims.size()) + (static_cast<int>(i) < total % static_cast<int>(dims.size()));
    for (int k = 0; k < count; ++k) jobs.emplace_back(dims[i], k);
  }
  std::vector<InequalitySample> results(jobs.size());
  parallel_for(jobs.size(), cfg.threads,
               [&](std::size_t i) { results[i] = inequality_sample(cfg, jobs[i].first, jobs[i].second); });

  SuiteResult out;
  out.suite = "inequalities";
  CheckSummary first{"prop21_first"}, second{"prop21_second"}, comb{"cor_sec"};
  for (const auto& r : results) {
    add_slack(first, r.reports[0], cfg.tol.inequality, out.violations);
    add_slack(second, r.reports[1], cfg.tol.inequality, out.violations);
    for (std::size_t j = 2; j < r.reports.size(); ++j) add_slack(comb, r.reports[j], cfg.tol.inequality, out.violations);
  }
  const auto ends = ineq::cor_sec_endpoints();
  CheckSummary sym{"cor_sec_endpoints"};
  add_error(sym, ends.ok() ? 0.0 : 1.0, 0.0);
  out.checks = {first, second, comb, sym};
  return out;
}

std::vector<SuiteResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "identities") return {run_identities(cfg)};
  if (name == "models") return {run_models(cfg)};
  if (name == "inequalities") return {run_inequalities(cfg)};
  if (name == "all") return {run_identities(cfg), run_models(cfg), run_inequalities(cfg)};
  throw std::invalid_argument("unknown suite: " + name);
}

nlohmann::ordered_json to_json(const SuiteResult& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"count", c.count}, {"failures", c.failures}, {"worst", c.worst}});
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) violations.push_back(ineq::to_json(v));
  return {{"suite", r.suite}, {"ok", r.ok()}, {"checks", checks}, {"violations", violations}};
}

}  // namespace pinchcert::verify
