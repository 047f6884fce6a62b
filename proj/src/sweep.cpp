#include "fmgame/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <thread>

#include "fmgame/closed_form.hpp"
#include "fmgame/config.hpp"
#include "fmgame/extensions.hpp"
#include "fmgame/params.hpp"
#include "fmgame/welfare.hpp"

namespace fmgame {

namespace {

using Cells = std::vector<std::string>;

const Cells kBaseColumns = {"k",      "s",       "status",  "regime",          "w1",
                            "eta1",   "Q1",      "Q2",      "pi_dev1",         "pi_dev2",
                            "profit_deployer",   "consumer_surplus", "social_welfare"};

Cells suffixed(const std::string& suffix) {
  return {"regime" + suffix,          "Q1" + suffix,
          "Q2" + suffix,              "pi_dev1" + suffix,
          "pi_dev2" + suffix,         "profit_deployer" + suffix,
          "consumer_surplus" + suffix, "social_welfare" + suffix};
}

Cells extra_columns(Scenario scenario) {
  switch (scenario) {
    case Scenario::Baseline: return {};
    case Scenario::Mandate: return suffixed("_mandate");
    case Scenario::Integration:
      return {"Q1v", "Q2v", "chain_profit", "chain_profit_integrated",
              "consumer_surplus_integrated", "social_welfare_integrated"};
    case Scenario::Subsidy:
      return {"regime_subsidy",         "w1_subsidy",
              "eta1_subsidy",           "Q1_subsidy",
              "Q2_subsidy",             "pi_dev1_subsidy",
              "pi_dev2_subsidy",        "profit_deployer_subsidy",
              "consumer_surplus_subsidy", "social_welfare_subsidy",
              "subsidy_spend",          "social_welfare_net_subsidy"};
  }
  return {};
}

void append(Cells& row, const Equilibrium& eq, const WelfareBreakdown& w, bool strategy) {
  row.emplace_back(to_string(eq.regime));
  if (strategy) {
    row.push_back(format_number(eq.strategy.w1));
    row.push_back(format_number(eq.strategy.eta1));
  }
  for (double x : {eq.period1.engagement, eq.period2.engagement, w.dev1, w.dev2, w.deployer,
                   w.consumer, w.social}) {
    row.push_back(format_number(x));
  }
}

void add_violations(std::vector<std::string>& all, const ModelParams& p, const char* prefix) {
  for (const auto& v : validate(p).violations) {
    const std::string name = prefix + v;
    if (std::find(all.begin(), all.end(), name) == all.end()) all.push_back(name);
  }
}

std::string join_row(const Cells& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string sweep_row(const ModelParams& p, Scenario scenario, std::size_t width) {
  Cells row = {format_number(p.k), format_number(p.s)};

  ModelParams base = p;
  if (scenario == Scenario::Subsidy) base.s = 0.0;

  std::vector<std::string> violations;
  add_violations(violations, base, "");
  if (scenario == Scenario::Subsidy) add_violations(violations, p, "subsidy: ");
  if (scenario == Scenario::Mandate && p.s != 0.0) violations.emplace_back("mandate requires s = 0");

  if (!violations.empty()) {
    std::string status = "invalid: ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) status += "; ";
      status += violations[i];
    }
    row.push_back(status);
    row.resize(width);
    return join_row(row);
  }

  row.emplace_back("ok");
  const auto eq = solve_game(base);
  const auto w = welfare_of(base, eq);
  append(row, eq, w, true);

  switch (scenario) {
    case Scenario::Baseline: break;
    case Scenario::Mandate: {
      const auto m = mandate_outcome(base);
      append(row, m, welfare_of(base, m), false);
      break;
    }
    case Scenario::Integration: {
      const auto v = solve_integrated(base);
      for (double x : {v.q1v, v.q2v, w.dev1 + w.deployer, v.profit, v.consumer, v.social}) {
        row.push_back(format_number(x));
      }
      break;
    }
    case Scenario::Subsidy: {
      const auto sub = solve_subsidized(p);
      append(row, sub.eq, sub.welfare, true);
      row.push_back(format_number(sub.subsidy_spend));
      row.push_back(format_number(sub.social_net_of_subsidy));
      break;
    }
  }
  return join_row(row);
}

}  // namespace

const char* to_string(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::Baseline: return "baseline";
    case Scenario::Mandate: return "mandate";
    case Scenario::Integration: return "integration";
    case Scenario::Subsidy: return "subsidy";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  for (auto s : {Scenario::Baseline, Scenario::Mandate, Scenario::Integration, Scenario::Subsidy}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scenario '" + name + "' (baseline, mandate, integration, subsidy)");
}

void validate(const SweepSpec& spec) {
  if (spec.parameter != "k" && spec.parameter != "s") {
    throw ConfigError("sweep parameter must be k or s, got '" + spec.parameter + "'");
  }
  if (!(spec.lo < spec.hi)) throw ConfigError("sweep requires lo < hi");
  if (spec.steps < 2) throw ConfigError("sweep requires at least 2 steps");
}

std::vector<std::string> sweep_header(Scenario scenario) {
  Cells header = kBaseColumns;
  for (auto& c : extra_columns(scenario)) header.push_back(std::move(c));
  return header;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_sweep_csv(const ModelParams& params, const SweepSpec& spec, std::ostream& out,
                     int threads) {
  validate(spec);
  const auto header = sweep_header(spec.scenario);
  const std::size_t n = static_cast<std::size_t>(spec.steps);

  std::vector<std::string> rows(n);
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(n));

  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      ModelParams p = params;
      const double x = i + 1 == n ? spec.hi
                                  : spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                                                  static_cast<double>(n - 1);
      set_param(p, spec.parameter, x);
      rows[i] = sweep_row(p, spec.scenario, header.size());
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  out << join_row(header);
  for (const auto& row : rows) out << row;
  if (!out) throw IoError("failed writing sweep output");
}

}  // namespace fmgame
