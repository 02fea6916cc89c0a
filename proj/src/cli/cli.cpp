#include "pinchcert/cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pinchcert/proof/certificate_json.hpp"
#include "pinchcert/verify/suites.hpp"

namespace pinchcert::cli {

using ca::Rational;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int parse_dimension(const std::string& text) {
  int n = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw UsageError("--n must be an integer, got '" + text + "'");
  if (n < 3) throw UsageError("--n must be at least 3");
  return n;
}

Rational parse_exact(const std::string& text, const char* flag) {
  try {
    return ca::parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " must be an exact rational such as -1/3, got '" + text + "'");
  }
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw UsageError(std::string(source) + " must be an unsigned integer, got '" + text + "'");
  return v;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) dims.push_back(parse_dimension(item));
  if (dims.empty()) throw UsageError("--dims needs at least one dimension");
  return dims;
}

struct TRange {
  Rational start, stop, step;
};

TRange parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 1) {
    const Rational t = parse_exact(parts[0], "--t");
    return {t, t, Rational(1)};
  }
  if (parts.size() != 3) throw UsageError("--t expects start:stop:step, got '" + text + "'");
  TRange r{parse_exact(parts[0], "--t"), parse_exact(parts[1], "--t"), parse_exact(parts[2], "--t")};
  if (r.step <= 0) throw UsageError("range step must be positive");
  if (r.stop < r.start) throw UsageError("range stop is below start");
  return r;
}

bool is_bach_flat(int n, const Rational& t) { return n == 4 && t == Rational(-1, 3); }

// The rigidity statement that covers (n, t).
std::string theorem_label(int n, const Rational& t) {
  if (is_bach_flat(n, t)) return "Bach-flat case (n = 4, t = -1/3)";
  if (n == 4) return "four-dimensional case, t != -1/3, R >= 0";
  if (t <= Rational(-1, 2)) return "t <= -1/2, R >= 0";
  return "t > -1/2, R = const >= 0";
}

// Constant scalar curvature is a hypothesis, except in dimension four away
// from t = -1/3 where critical metrics have it automatically.
bool hypothesis_constant_r(const proof::PinchCertificate& c) {
  return c.requires_constant_scalar && !(c.n == 4 && !c.bach_flat);
}

int cmd_epsilon(int n, const Rational& t, bool json, std::ostream& out) {
  const proof::PinchCertificate c = proof::theorem_lookup(n, t);
  if (json) {
    out << ordered_json{{"schema_version", proof::kCertificateSchemaVersion},
                        {"n", n},
                        {"t", ca::to_fraction_string(t)},
                        {"epsilon", ca::to_fraction_string(c.epsilon)},
                        {"branch", proof::branch_name(c.branch)},
                        {"theorem", theorem_label(n, t)},
                        {"requires_constant_scalar_curvature", hypothesis_constant_r(c)},
                        {"bach_flat", c.bach_flat},
                        {"valid", c.valid()}}
               .dump(2)
        << '\n';
  } else {
    out << "epsilon = " << ca::to_string(c.epsilon);
    if (hypothesis_constant_r(c)) out << ", requires R = const";
    if (c.bach_flat) out << ", Bach-flat case";
    out << '\n' << "applies: " << theorem_label(n, t) << '\n';
  }
  return c.valid() ? kOk : kViolation;
}

int cmd_certify(int n, const Rational& t, const std::string& path, std::ostream& out, std::ostream& err) {
  const proof::PinchCertificate c = proof::theorem_lookup(n, t);
  const std::string text = proof::to_json(c).dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + path);
    f << text;
    out << "wrote " << path << '\n';
  }
  if (!c.valid()) {
    for (const auto& chk : c.checks)
      if (!chk.passed) err << "check failed: " << chk.name << '\n';
    return kViolation;
  }
  return kOk;
}

int cmd_table(int n, const TRange& range, bool json, std::ostream& out, std::ostream& err) {
  const Rational excluded(-1, 3);
  bool mismatch = false, hit_excluded = false;
  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  text << "t\tepsilon\tbranch\n";
  for (Rational t = range.start; t <= range.stop; t += range.step) {
    const Rational eps = proof::theorem_threshold(n, t);
    // the optimizer must land on the closed form
    if (proof::optimize_eps(n, t).epsilon != eps) {
      mismatch = true;
      err << "optimizer disagrees with the threshold at t = " << ca::to_string(t) << '\n';
    }
    const bool excl = is_bach_flat(n, t);
    hit_excluded = hit_excluded || excl;
    rows.push_back({{"t", ca::to_fraction_string(t)},
                    {"epsilon", ca::to_fraction_string(eps)},
                    {"branch", proof::branch_name(proof::branch_of(t))},
                    {"excluded", excl}});
    text << ca::to_string(t) << '\t' << ca::to_string(eps) << '\t' << proof::branch_name(proof::branch_of(t));
    if (excl) text << "\texcluded (Bach-flat)";
    text << '\n';
  }
  const bool covers_excluded = n == 4 && range.start <= excluded && excluded <= range.stop;
  if (json) {
    out << ordered_json{{"schema_version", proof::kCertificateSchemaVersion},
                        {"n", n},
                        {"rows", rows},
                        {"excluded_t", n == 4 ? ordered_json("-1/3") : ordered_json(nullptr)}}
               .dump(2)
        << '\n';
  } else {
    out << text.str();
    if (covers_excluded && !hit_excluded) out << "note: t = -1/3 is excluded (Bach-flat)\n";
  }
  return mismatch ? kViolation : kOk;
}

int cmd_verify(const std::string& suite, const verify::SuiteConfig& cfg, bool json, const std::string& report,
               std::ostream& out) {
  const std::vector<verify::SuiteResult> results = verify::run_suite(suite, cfg);
  bool ok = true;
  std::vector<ineq::IneqReport> violations;
  for (const auto& r : results) {
    ok = ok && r.ok();
    violations.insert(violations.end(), r.violations.begin(), r.violations.end());
  }
  if (json) {
    ordered_json doc{{"schema_version", proof::kCertificateSchemaVersion},
                     {"suite", suite},
                     {"config",
                      {{"seed", cfg.seed},
                       {"samples", cfg.samples},
                       {"dims", cfg.dims},
                       {"s_per_sample", cfg.s_per_sample},
                       {"tolerance",
                        {{"inequality", cfg.tol.inequality},
                         {"f_norm", cfg.tol.f_norm},
                         {"contraction", cfg.tol.contraction},
                         {"decomposition", cfg.tol.decomposition}}}}},
                     {"ok", ok}};
    doc["results"] = ordered_json::array();
    for (const auto& r : results) doc["results"].push_back(verify::to_json(r));
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results)
      for (const auto& c : r.checks) {
        std::ostringstream worst;
        worst.precision(3);
        worst << std::scientific << c.worst;
        out << (c.failures == 0 ? "PASS " : "FAIL ") << r.suite << '/' << c.name << "  count=" << c.count
            << " failures=" << c.failures << " worst=" << worst.str() << '\n';
      }
  }
  if (!report.empty()) {
    std::ofstream f(report, std::ios::binary);
    if (!f) throw UsageError("cannot open " + report);
    ineq::write_jsonl(f, violations);
  } else if (!json) {
    ineq::write_jsonl(out, violations);
  }
  return ok ? kOk : kViolation;
}

// "--t -1/3" would otherwise read as a short flag; glue such values on.
std::vector<std::string> attach_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if ((a == "--t" || a == "--n") && i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-') {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pinching thresholds, certificates and curvature checks for quadratic curvature functionals",
               "pinchcert"};
  app.require_subcommand(1);

  std::string n_text, t_text, out_path, suite, dims_text, report, seed_text;
  bool json = false;
  verify::SuiteConfig cfg;

  auto* eps_cmd = app.add_subcommand("epsilon", "Pinching threshold for (n, t)");
  eps_cmd->add_option("--n", n_text, "dimension, integer >= 3")->required();
  eps_cmd->add_option("--t", t_text, "exact rational, e.g. -1/3")->required();
  eps_cmd->add_flag("--json", json, "JSON output");

  auto* cert_cmd = app.add_subcommand("certify", "Write the full certificate for (n, t)");
  cert_cmd->add_option("--n", n_text, "dimension, integer >= 3")->required();
  cert_cmd->add_option("--t", t_text, "exact rational")->required();
  cert_cmd->add_option("--out", out_path, "output file (default: stdout)");

  auto* table_cmd = app.add_subcommand("table", "Threshold over a range of t");
  table_cmd->add_option("--n", n_text, "dimension, integer >= 3")->required();
  table_cmd->add_option("--t", t_text, "start:stop:step with exact rationals")->required();
  table_cmd->add_flag("--json", json, "JSON output");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "identities | models | inequalities | all")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>{"identities", "models", "inequalities", "all"}));
  verify_cmd->add_option("--seed", seed_text, "base seed (default: $PINCH_SEED, then 0)");
  verify_cmd->add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--dims", dims_text, "comma-separated dimensions, e.g. 3,4,5,6");
  verify_cmd->add_option("--s-per-sample", cfg.s_per_sample, "draws of s per inequality sample")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--threads", cfg.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--tol-inequality", cfg.tol.inequality)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-f-norm", cfg.tol.f_norm)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-contraction", cfg.tol.contraction)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-decomposition", cfg.tol.decomposition)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--report", report, "write violations as JSON lines to this file");
  verify_cmd->add_flag("--json", json, "JSON output");

  std::vector<std::string> args = attach_negative_values(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*eps_cmd) return cmd_epsilon(parse_dimension(n_text), parse_exact(t_text, "--t"), json, out);
    if (*cert_cmd) return cmd_certify(parse_dimension(n_text), parse_exact(t_text, "--t"), out_path, out, err);
    if (*table_cmd) return cmd_table(parse_dimension(n_text), parse_range(t_text), json, out, err);
    if (!seed_text.empty()) {
      cfg.seed = parse_seed(seed_text, "--seed");
    } else if (const char* env = std::getenv("PINCH_SEED"); env && *env) {
      cfg.seed = parse_seed(env, "PINCH_SEED");
    }
    if (!dims_text.empty()) cfg.dims = parse_dims(dims_text);
    return cmd_verify(suite, cfg, json, report, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kViolation;
  }
}

}  // namespace pinchcert::cli
