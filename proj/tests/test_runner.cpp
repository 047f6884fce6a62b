#include <doctest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fmgame/config.hpp"
#include "fmgame/errors.hpp"
#include "fmgame/sweep.hpp"
#include "fmgame/verify.hpp"
#include "test_support.hpp"

using namespace fmgame;
using fmtest::set_a;
using fmtest::set_b;

namespace {

const char* kSetA =
    "# set A\n"
    "theta = 5\n"
    "c = 1\n"
    "w_high = 2.5   # high fee\n"
    "w_low = 0.5\n"
    "\n"
    "eta_cap = 1.5\n"
    "k = 0.2\n"
    "s = 0\n";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> run_sweep(const ModelParams& p, SweepSpec spec) {
  std::ostringstream out;
  write_sweep_csv(p, spec, out);
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(out.str());
  std::string line;
  while (std::getline(in, line)) rows.push_back(split(line, ','));
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  FAIL("missing column " << name);
  return -1;
}

VerifyOptions quick_options() {
  VerifyOptions opt;
  opt.k_grid = 12;
  opt.random_sets = 4;
  opt.oracle.eta_grid_points = 1001;
  opt.oracle.integrated_grid_points = 21;
  return opt;
}

}  // namespace

TEST_CASE("config parses all seven keys with comments and blank lines") {
  const auto p = parse_config(kSetA);
  CHECK(p.theta == 5.0);
  CHECK(p.c == 1.0);
  CHECK(p.w_high == 2.5);
  CHECK(p.w_low == 0.5);
  CHECK(p.eta_cap == 1.5);
  CHECK(p.k == 0.2);
  CHECK(p.s == 0.0);
}

TEST_CASE("config rejects missing, unknown and repeated keys") {
  CHECK_THROWS_WITH_AS(parse_config("theta=5\nc=1\n"),
                       doctest::Contains("missing keys: w_high, w_low, eta_cap, k, s"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(std::string(kSetA) + "gamma = 1\n"),
                       doctest::Contains("unknown key 'gamma'"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(std::string(kSetA) + "k = 0.1\n"),
                       doctest::Contains("duplicate key 'k'"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("theta 5\n"), doctest::Contains("expected key=value"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("theta = five\n"), doctest::Contains("not a finite number"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config("theta = 5x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("theta = inf\n"), ConfigError);
}

TEST_CASE("config files") {
  const auto p = load_config(std::string(FMG_TEST_DATA) + "/set_b.cfg");
  CHECK(p.w_low == 0.8);
  CHECK(p.s == 0.5);
  CHECK_THROWS_WITH_AS(load_config("/nonexistent/dir/params.cfg"),
                       doctest::Contains("/nonexistent/dir/params.cfg"), IoError);
}

TEST_CASE("parameters by name") {
  auto p = set_a();
  set_param(p, "eta_cap", 2.0);
  CHECK(get_param(p, "eta_cap") == 2.0);
  CHECK_THROWS_AS(set_param(p, "eta", 1.0), ConfigError);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.lo = 0.0;
  spec.hi = 0.1;
  spec.steps = 1;
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec.steps = 10;
  spec.hi = 0.0;
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec.hi = 0.1;
  spec.parameter = "theta";
  CHECK_THROWS_AS(validate(spec), ConfigError);
  CHECK(parse_scenario("integration") == Scenario::Integration);
  CHECK_THROWS_AS(parse_scenario("merger"), ConfigError);
}

TEST_CASE("baseline sweep on set A") {
  const auto rows = run_sweep(set_a(), {"k", 0.0, 0.26, 200, Scenario::Baseline});
  REQUIRE(rows.size() == 201);
  const auto& header = rows[0];
  CHECK(header == sweep_header(Scenario::Baseline));
  const int regime = column(header, "regime");
  const int eta1 = column(header, "eta1");
  const int k = column(header, "k");

  int changes = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == header.size());
    CHECK(rows[i][column(header, "status")] == "ok");
    if (i > 1 && rows[i][regime] != rows[i - 1][regime]) ++changes;
    const double social = std::stod(rows[i][column(header, "social_welfare")]);
    double sum = 0.0;
    for (const char* c : {"pi_dev1", "pi_dev2", "profit_deployer", "consumer_surplus"}) {
      sum += std::stod(rows[i][column(header, c)]);
    }
    CHECK(std::abs(social - sum) <= 1e-9 * std::max(1.0, social));
  }
  CHECK(changes == 2);
  CHECK(rows[1][regime] == "Harvest");
  CHECK(rows.back()[regime] == "Dominate");
  CHECK(rows[1][eta1] == "1.5");
  CHECK(rows[1][k] == "0");
  CHECK(rows.back()[k] == "0.26");
}

TEST_CASE("sweep marks points beyond k_max") {
  const auto rows = run_sweep(set_a(), {"k", 0.0, 0.3, 31, Scenario::Baseline});
  const auto& header = rows[0];
  const int status = column(header, "status");
  CHECK(rows[27][status] == "ok");  // k = 0.26
  CHECK(rows[28][status] == "invalid: k exceeds k_max");
  CHECK(rows[28][column(header, "regime")].empty());
  CHECK(rows[28].size() == header.size());
}

TEST_CASE("mandate sweep has flat social welfare") {
  const auto rows = run_sweep(set_a(), {"k", 0.0, 0.26, 50, Scenario::Mandate});
  const int sw = column(rows[0], "social_welfare_mandate");
  std::set<std::string> values;
  for (std::size_t i = 1; i < rows.size(); ++i) values.insert(rows[i][sw]);
  CHECK(values.size() == 1);
  const auto rows_s = run_sweep(set_b(0.1), {"k", 0.0, 0.2, 5, Scenario::Mandate});
  CHECK(rows_s[1][column(rows_s[0], "status")] == "invalid: mandate requires s = 0");
}

TEST_CASE("subsidy sweep shows the delayed regime change") {
  const auto rows = run_sweep(set_b(), {"k", 0.0, 0.25, 251, Scenario::Subsidy});
  const auto& header = rows[0];
  const int base = column(header, "regime");
  const int sub = column(header, "regime_subsidy");
  const int s = column(header, "s");
  int first_base = -1;
  int first_sub = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i][column(header, "status")] == "ok");
    CHECK(rows[i][s] == "0.5");
    if (first_base < 0 && rows[i][base] != "Harvest") first_base = static_cast<int>(i);
    if (first_sub < 0 && rows[i][sub] != "Harvest") first_sub = static_cast<int>(i);
  }
  CHECK(first_base > 0);
  CHECK(first_sub > first_base);
}

TEST_CASE("integration sweep columns") {
  const auto rows = run_sweep(set_a(), {"k", 0.0, 0.2, 3, Scenario::Integration});
  const auto& header = rows[0];
  CHECK(rows[3][column(header, "Q1v")] == "6.25");
  CHECK(rows[3][column(header, "Q2v")] == "14.0625");
  CHECK(rows[3][column(header, "chain_profit_integrated")] == "50.78125");
}

TEST_CASE("sweep output is identical across thread counts") {
  std::ostringstream a, b;
  write_sweep_csv(set_a(), {"k", 0.0, 0.26, 64, Scenario::Mandate}, a, 1);
  write_sweep_csv(set_a(), {"k", 0.0, 0.26, 64, Scenario::Mandate}, b, 4);
  CHECK(a.str() == b.str());
  CHECK(a.str().find('\r') == std::string::npos);
}

TEST_CASE("s sweep") {
  const auto rows = run_sweep(set_b(0.1), {"s", 0.0, 0.8, 9, Scenario::Subsidy});
  REQUIRE(rows.size() == 10);
  CHECK(rows[1][column(rows[0], "subsidy_spend")] == "0");
}

TEST_CASE("number format keeps 12 significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(154.150390625) == "154.150390625");
}

TEST_CASE("quick verification passes on set A and set B") {
  for (const auto& p : {set_a(), set_b()}) {
    const auto results = run_verification(p, quick_options());
    for (const auto& r : results) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.passed);
    }
  }
  const auto names = run_verification(set_b(), quick_options());
  std::set<std::string> seen;
  for (const auto& r : names) seen.insert(r.name);
  CHECK(seen.count("subsidy_limit") == 1);
  CHECK(seen.count("subsidy_threshold_shift") == 1);
}

TEST_CASE("zero tolerance makes a named check fail") {
  auto opt = quick_options();
  opt.rel_tol = 0.0;
  opt.profit_rel_tol = 0.0;
  opt.abs_tol = 0.0;
  bool any_failed = false;
  for (const auto& r : run_verification(set_a(), opt)) {
    if (!r.passed) {
      any_failed = true;
      CHECK_FALSE(r.name.empty());
    }
  }
  CHECK(any_failed);
}

TEST_CASE("verification stops after invalid parameters") {
  const auto results = run_verification(set_a(0.3), quick_options());
  REQUIRE(results.size() == 1);
  CHECK(results[0].name == "params_valid");
  CHECK_FALSE(results[0].passed);
}
