#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "pinchcert/cli/cli.hpp"

using pinchcert::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// The built binary, through the shell.
Run subprocess(const std::string& args) {
  const std::string cmd = std::string(PINCHCERT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("epsilon") {
  Run r = cli({"epsilon", "--n", "4", "--t", "-1/3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("epsilon = 1/48, requires R = const, Bach-flat case\n", 0) == 0);

  r = cli({"epsilon", "--n", "4", "--t", "-1/2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("epsilon = 0\n", 0) == 0);

  r = cli({"epsilon", "--n", "5", "--t", "0"});
  CHECK(r.out.rfind("epsilon = 1/24, requires R = const\n", 0) == 0);
  r = cli({"epsilon", "--n", "4", "--t", "0"});
  CHECK(r.out.rfind("epsilon = 1/16\n", 0) == 0);

  r = cli({"epsilon", "--n", "6", "--t=-2", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["epsilon"] == "-3/16");
  CHECK(j["branch"] == "below");
  CHECK(j["requires_constant_scalar_curvature"] == false);
  CHECK(j["valid"] == true);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"epsilon", "--n", "2", "--t", "0"}).code == 2);
  CHECK(cli({"epsilon", "--n", "4.0", "--t", "0"}).code == 2);
  CHECK(cli({"epsilon", "--n", "4", "--t", "-0.5"}).code == 2);
  CHECK(cli({"epsilon", "--n", "4", "--t", "1e-1"}).code == 2);
  CHECK(cli({"epsilon", "--n", "4"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"table", "--n", "4", "--t", "1:0:1"}).code == 2);
  CHECK(cli({"table", "--n", "4", "--t", "0:1:0"}).code == 2);
  CHECK(cli({"table", "--n", "4", "--t", "0:1"}).code == 2);
  CHECK(cli({"verify", "tensors"}).code == 2);
  CHECK(cli({"verify", "models", "--seed", "-1"}).code == 2);
  CHECK(cli({"verify", "models", "--dims", "3,x"}).code == 2);
  CHECK(cli({"verify", "inequalities", "--dims", "2,3"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("certify") {
  const auto path = temp_file("pinchcert_cert_test.json");
  Run r = cli({"certify", "--n", "4", "--t", "-1/3", "--out", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["epsilon_threshold"] == "1/48");
  CHECK(j["parameters"]["a1"] == "1/1");
  CHECK(j["parameters"]["a2"] == "1/1");
  CHECK(j["b_feasibility"]["status"] == "infeasible");
  CHECK(j["valid"] == true);
  std::filesystem::remove(path);

  const auto below = nlohmann::json::parse(cli({"certify", "--n", "4", "--t", "-1"}).out);
  CHECK(below["parameters"]["a1"] == "-2/1");
  CHECK(below["parameters"]["a2"] == "1/1");
  CHECK(below["b_feasibility"]["status"] == "feasible");

  const auto crit = nlohmann::json::parse(cli({"certify", "--n", "3", "--t", "-1/2"}).out);
  CHECK(crit["parameters"]["a1"] == "0/1");
  CHECK(crit["epsilon_threshold"] == "0/1");
  CHECK(crit["b_feasibility"]["status"] == "feasible");

  // byte-identical across runs
  CHECK(cli({"certify", "--n", "5", "--t", "-2"}).out == cli({"certify", "--n", "5", "--t", "-2"}).out);
}

TEST_CASE("table") {
  Run r = cli({"table", "--n", "4", "--t", "-1:1:1/4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("-1\t-1/4\tbelow\n") != std::string::npos);
  CHECK(r.out.find("-1/2\t0\tcritical\n") != std::string::npos);
  CHECK(r.out.find("-1/4\t1/32\tabove\n") != std::string::npos);
  CHECK(r.out.find("1\t3/16\tabove\n") != std::string::npos);
  CHECK(r.out.find("t = -1/3 is excluded") != std::string::npos);

  r = cli({"table", "--n", "4", "--t", "-1/3:-1/3:1", "--json"});
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["excluded"] == true);
  CHECK(j["rows"][0]["epsilon"] == "1/48");

  j = nlohmann::json::parse(cli({"table", "--n", "5", "--t", "-1:0:1/2", "--json"}).out);
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["epsilon"] == "-1/9");
  CHECK(j["rows"][1]["epsilon"] == "0/1");
  CHECK(j["rows"][2]["epsilon"] == "1/24");

  CHECK(nlohmann::json::parse(cli({"table", "--n", "3", "--t", "1/7", "--json"}).out)["rows"].size() == 1);
}

TEST_CASE("verify") {
  Run r = cli({"verify", "models"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  const std::vector<std::string> args{"verify", "inequalities", "--seed", "42", "--samples", "24",
                                      "--dims",  "3,4,5,6",      "--json"};
  r = cli(args);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["results"][0]["checks"][2]["count"] == 240);
  CHECK(cli(args).out == r.out);

  SUBCASE("PINCH_SEED is the fallback, the flag wins") {
    ::setenv("PINCH_SEED", "42", 1);
    CHECK(cli({"verify", "inequalities", "--samples", "24", "--dims", "3,4,5,6", "--json"}).out == r.out);
    ::setenv("PINCH_SEED", "9", 1);
    CHECK(cli(args).out == r.out);
    ::setenv("PINCH_SEED", "nine", 1);
    CHECK(cli({"verify", "models"}).code == 2);
    ::unsetenv("PINCH_SEED");
  }
  SUBCASE("a clean run writes an empty violation stream") {
    const auto path = temp_file("pinchcert_violations.jsonl");
    r = cli({"verify", "inequalities", "--samples", "3", "--dims", "4", "--report", path.string()});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(path));
    CHECK(std::filesystem::file_size(path) == 0);
    std::filesystem::remove(path);
  }
  SUBCASE("failed checks exit 1") {
    r = cli({"verify", "identities", "--samples", "3", "--tol-f-norm", "1e-300"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL identities/f_norm_identity") != std::string::npos);
  }
}

TEST_CASE("binary exit codes") {
  Run r = subprocess("epsilon --n 4 --t -1/3");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("epsilon = 1/48", 0) == 0);
  CHECK(subprocess("epsilon --n 2 --t 0").code == 2);
  CHECK(subprocess("epsilon --n 4 --t -0.5").code == 2);
  CHECK(subprocess("verify identities --seed 7 --samples 20").code == 0);
  CHECK(subprocess("verify identities --samples 2 --tol-f-norm 1e-300").code == 1);
  CHECK(subprocess("verify inequalities --seed 42 --samples 12 --json").out ==
        subprocess("verify inequalities --seed 42 --samples 12 --json").out);
}
