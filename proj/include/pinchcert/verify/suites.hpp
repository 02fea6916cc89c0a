#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchcert/ineq/inequalities.hpp"
#include "pinchcert/tensor/random.hpp"

namespace pinchcert::verify {

struct Tolerances {
  double inequality = 1e-9;
  double f_norm = 1e-10;
  double contraction = 1e-12;  // relative to 1 + |formula|
  double decomposition = 1e-10;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  int samples = 0;          // 0: the suite's default
  std::vector<int> dims;    // empty: the suite's default
  int s_per_sample = 10;
  int threads = 0;          // 0: hardware concurrency
  Tolerances tol;
};

struct CheckSummary {
  std::string name;
  std::size_t count = 0;
  std::size_t failures = 0;
  double worst = 0;  // largest error, or most negative slack
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckSummary> checks;
  std::vector<ineq::IneqReport> violations;
  bool ok() const;
};

/// Deterministic generator for sample k of dimension n.
tensor::Rng sample_rng(std::uint64_t seed, int n, std::uint64_t k);

/// Decomposition round trip and norm split, |F|^2 and Weitzenboeck contraction
/// on random inputs; `samples` per dimension (default 500, dims 3..6).
SuiteResult run_identities(const SuiteConfig& cfg);

/// Exact invariants, sectional extremes, the inequalities and the S^4 Euler
/// integrand on every standard fixture. Ignores samples and dims.
SuiteResult run_models(const SuiteConfig& cfg);

/// Both pointwise inequalities and s_per_sample draws of the combined bound on
/// random tensors with R > 0. `samples` is the total, split across dims
/// (default 1000, dims 3..6).
SuiteResult run_inequalities(const SuiteConfig& cfg);

std::vector<SuiteResult> run_suite(const std::string& name, const SuiteConfig& cfg);

nlohmann::ordered_json to_json(const SuiteResult& r);

}  // namespace pinchcert::verify
