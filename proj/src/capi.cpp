#include "fmgame/fmgame.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fmgame/closed_form.hpp"
#include "fmgame/config.hpp"
#include "fmgame/extensions.hpp"
#include "fmgame/oracle.hpp"
#include "fmgame/params.hpp"
#include "fmgame/sweep.hpp"
#include "fmgame/verify.hpp"
#include "fmgame/welfare.hpp"

struct fmg_model {
  fmgame::ModelParams params;
};

namespace {

thread_local std::string g_last_error;

fmg_status fail(fmg_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
fmg_status guarded(F&& body) {
  try {
    body();
    return FMG_OK;
  } catch (const fmgame::InvalidParams& e) {
    return fail(FMG_INVALID_PARAMS, e.what());
  } catch (const fmgame::IoError& e) {
    return fail(FMG_IO, e.what());
  } catch (const fmgame::ConfigError& e) {
    return fail(FMG_CONFIG, e.what());
  } catch (const fmgame::DomainError& e) {
    return fail(FMG_DOMAIN, e.what());
  } catch (const fmgame::InternalError& e) {
    return fail(FMG_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(FMG_INTERNAL, e.what());
  } catch (...) {
    return fail(FMG_INTERNAL, "unknown error");
  }
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

fmg_status null_argument() { return fail(FMG_NULL_ARGUMENT, "null argument"); }

fmgame::ModelParams to_cpp(const fmg_params& p) {
  return {p.theta, p.c, p.w_high, p.w_low, p.eta_cap, p.k, p.s};
}

fmg_params to_c(const fmgame::ModelParams& p) {
  return {p.theta, p.c, p.w_high, p.w_low, p.eta_cap, p.k, p.s};
}

fmg_period to_c(const fmgame::PeriodOutcome& p) {
  return {p.effort, p.engagement, p.fee_paid, p.openness};
}

fmg_equilibrium to_c(const fmgame::Equilibrium& eq) {
  fmg_equilibrium out;
  out.regime = static_cast<fmg_regime>(eq.regime);
  out.w1 = eq.strategy.w1;
  out.eta1 = eq.strategy.eta1;
  out.period1 = to_c(eq.period1);
  out.period2 = to_c(eq.period2);
  out.winner2 = eq.winner2 == fmgame::Developer::Incumbent ? FMG_INCUMBENT : FMG_ENTRANT;
  out.w2 = eq.w2;
  out.w2_tilde = eq.w2_tilde;
  out.eta2 = eq.eta2;
  out.eta2_tilde = eq.eta2_tilde;
  return out;
}

fmg_welfare to_c(const fmgame::WelfareBreakdown& w) {
  return {w.dev1, w.dev2, w.deployer, w.consumer, w.social};
}

fmg_integrated to_c(const fmgame::IntegratedOutcome& v) {
  return {v.eta1v, v.eta2v, v.q1v, v.q2v, v.profit, v.consumer, v.social};
}

fmg_crossing to_c(const fmgame::Crossing& c) {
  return {static_cast<fmg_crossing_kind>(c.kind), c.k, c.residual, c.sign_changes,
          c.at_jump ? 1 : 0};
}

fmg_policy to_c(const fmgame::PolicyComparison& pc) {
  fmg_policy out;
  out.baseline = to_c(pc.baseline);
  out.counterfactual = to_c(pc.counterfactual);
  out.baseline_welfare = to_c(pc.baseline_welfare);
  out.counterfactual_welfare = to_c(pc.counterfactual_welfare);
  out.delta = to_c(pc.delta);
  out.subsidy_spend = pc.subsidy_spend;
  out.interval = static_cast<fmg_interval>(pc.interval);
  return out;
}

fmgame::OracleConfig to_cpp(const fmg_oracle_config& c) {
  fmgame::OracleConfig out;
  out.eta_grid_points = c.eta_grid_points;
  out.effort_search = c.effort_search;
  out.k_grid_points = c.k_grid_points;
  out.integrated_grid_points = c.integrated_grid_points;
  out.threads = c.threads;
  return out;
}

fmg_oracle_config to_c(const fmgame::OracleConfig& c) {
  return {c.eta_grid_points, c.effort_search, c.k_grid_points, c.integrated_grid_points,
          c.threads};
}

fmgame::SweepSpec to_cpp(const fmg_sweep_spec& s) {
  fmgame::SweepSpec out;
  out.parameter = s.parameter ? s.parameter : "";
  out.lo = s.lo;
  out.hi = s.hi;
  out.steps = s.steps;
  out.scenario = static_cast<fmgame::Scenario>(s.scenario);
  return out;
}

bool valid_scenario(fmg_scenario s) {
  return s >= FMG_SCENARIO_BASELINE && s <= FMG_SCENARIO_SUBSIDY;
}

}  // namespace

extern "C" {

fmg_status fmg_model_create(const fmg_params* params, fmg_model** out) {
  if (any_null(params, out)) return null_argument();
  return guarded([&] { *out = new fmg_model{to_cpp(*params)}; });
}

fmg_status fmg_model_load(const char* config_path, fmg_model** out) {
  if (any_null(config_path, out)) return null_argument();
  return guarded([&] { *out = new fmg_model{fmgame::load_config(config_path)}; });
}

void fmg_model_destroy(fmg_model* model) { delete model; }

fmg_status fmg_model_get_params(const fmg_model* model, fmg_params* out) {
  if (any_null(model, out)) return null_argument();
  *out = to_c(model->params);
  return FMG_OK;
}

fmg_status fmg_model_set(fmg_model* model, const char* name, double value) {
  if (any_null(model, name)) return null_argument();
  return guarded([&] { fmgame::set_param(model->params, name, value); });
}

fmg_status fmg_model_validate(const fmg_model* model) {
  if (any_null(model)) return null_argument();
  return guarded([&] { fmgame::require_valid(model->params); });
}

fmg_status fmg_k_max(const fmg_model* model, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = fmgame::k_max(model->params); });
}

fmg_status fmg_regime_thresholds(const fmg_model* model, fmg_thresholds* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto& p = model->params;
    fmgame::require_valid(p);
    const auto th = fmgame::regime_thresholds(p);
    fmg_thresholds r{};
    r.k_max = fmgame::k_max(p);
    r.k_bar_1 = th.k_bar_1;
    r.k_bar_2 = th.k_bar_2;
    r.k_bar_12 = th.k_bar_12;
    r.k_bar_13 = th.k_bar_13;
    r.k_bar_23 = th.k_bar_23;
    r.eta_bar_high = fmgame::eta_bar_high(p);
    r.eta_bar_low = fmgame::eta_bar_low(p);
    r.eta_prime_defined = th.eta_prime.has_value() ? 1 : 0;
    r.eta_prime = th.eta_prime.value_or(0.0);
    *out = r;
  });
}

fmg_status fmg_solve_baseline(const fmg_model* model, fmg_equilibrium* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = to_c(fmgame::solve_baseline(model->params)); });
}

fmg_status fmg_solve_subsidized(const fmg_model* model, fmg_subsidized* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto sub = fmgame::solve_subsidized(model->params);
    fmg_subsidized r;
    r.eq = to_c(sub.eq);
    r.subsidy_spend = sub.subsidy_spend;
    r.k_bar_1g = sub.k_bar_1g;
    r.k_bar_2g = sub.k_bar_2g;
    r.eta_bar_hg = sub.eta_bar_hg;
    r.eta_bar_lg = sub.eta_bar_lg;
    r.welfare = to_c(sub.welfare);
    r.social_net_of_subsidy = sub.social_net_of_subsidy;
    *out = r;
  });
}

fmg_status fmg_welfare_baseline(const fmg_model* model, fmg_welfare* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = to_c(fmgame::welfare_baseline(model->params)); });
}

fmg_status fmg_welfare_mandate(const fmg_model* model, fmg_welfare* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = to_c(fmgame::welfare_mandate(model->params)); });
}

fmg_status fmg_openness_trap_threshold(const fmg_model* model, fmg_trap* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto t = fmgame::openness_trap_threshold(model->params);
    *out = {t.found ? 1 : 0, t.k_bar, t.residual, t.at_jump ? 1 : 0};
  });
}

fmg_status fmg_solve_integrated(const fmg_model* model, fmg_integrated* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = to_c(fmgame::solve_integrated(model->params)); });
}

fmg_status fmg_integration_thresholds(const fmg_model* model, fmg_crossing* chain_profit,
                                      fmg_crossing* consumer, fmg_crossing* social) {
  if (any_null(model, chain_profit, consumer, social)) return null_argument();
  return guarded([&] {
    const auto t = fmgame::integration_thresholds(model->params);
    *chain_profit = to_c(t.chain_profit);
    *consumer = to_c(t.consumer);
    *social = to_c(t.social);
  });
}

fmg_status fmg_subsidy_comparison(const fmg_model* model, fmg_policy* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = to_c(fmgame::subsidy_comparison(model->params)); });
}

fmg_status fmg_mandate_comparison(const fmg_model* model, fmg_policy* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] { *out = to_c(fmgame::mandate_comparison(model->params)); });
}

void fmg_oracle_config_default(fmg_oracle_config* out) {
  if (out) *out = to_c(fmgame::OracleConfig{});
}

fmg_status fmg_oracle_solve_game(const fmg_model* model, const fmg_oracle_config* config,
                                 fmg_oracle_result* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto cfg = config ? to_cpp(*config) : fmgame::OracleConfig{};
    const auto r = fmgame::oracle_solve_game(model->params, cfg);
    *out = {to_c(r.eq), r.incumbent_profit, r.high_fee_period2_wins, r.eta_step};
  });
}

fmg_status fmg_oracle_solve_integrated(const fmg_model* model, const fmg_oracle_config* config,
                                       fmg_integrated* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto cfg = config ? to_cpp(*config) : fmgame::OracleConfig{};
    *out = to_c(fmgame::oracle_solve_integrated(model->params, cfg));
  });
}

void fmg_verify_options_default(fmg_verify_options* out) {
  if (!out) return;
  const fmgame::VerifyOptions d;
  *out = {d.rel_tol, d.profit_rel_tol, d.abs_tol, d.k_grid, d.random_sets, d.seed, to_c(d.oracle)};
}

fmg_status fmg_verify(const fmg_model* model, const fmg_verify_options* options,
                      fmg_check_fn on_check, void* user, int* failed) {
  if (any_null(model, failed)) return null_argument();
  return guarded([&] {
    fmgame::VerifyOptions opt;
    if (options) {
      opt.rel_tol = options->rel_tol;
      opt.profit_rel_tol = options->profit_rel_tol;
      opt.abs_tol = options->abs_tol;
      opt.k_grid = options->k_grid;
      opt.random_sets = options->random_sets;
      opt.seed = options->seed;
      opt.oracle = to_cpp(options->oracle);
    }
    fmgame::validate(opt.oracle);
    std::function<void(const fmgame::CheckResult&)> sink;
    if (on_check) {
      sink = [&](const fmgame::CheckResult& r) {
        on_check(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
      };
    }
    const auto results = fmgame::run_verification(model->params, opt, sink);
    int n = 0;
    for (const auto& r : results) n += r.passed ? 0 : 1;
    *failed = n;
  });
}

fmg_status fmg_sweep_csv(const fmg_model* model, const fmg_sweep_spec* spec, fmg_write_fn write,
                         void* user) {
  if (any_null(model, spec) || write == nullptr) return null_argument();
  if (!valid_scenario(spec->scenario)) return fail(FMG_INVALID_ARGUMENT, "unknown scenario");
  return guarded([&] {
    std::ostringstream buf;
    fmgame::write_sweep_csv(model->params, to_cpp(*spec), buf);
    const std::string text = buf.str();
    if (write(text.data(), text.size(), user) != 0) {
      throw fmgame::IoError("sweep output callback reported a write failure");
    }
  });
}

fmg_status fmg_sweep_csv_file(const fmg_model* model, const fmg_sweep_spec* spec,
                              const char* path) {
  if (any_null(model, spec)) return null_argument();
  if (!valid_scenario(spec->scenario)) return fail(FMG_INVALID_ARGUMENT, "unknown scenario");
  return guarded([&] {
    const auto sweep = to_cpp(*spec);
    if (path == nullptr || std::strcmp(path, "-") == 0) {
      fmgame::write_sweep_csv(model->params, sweep, std::cout);
      std::cout.flush();
      if (!std::cout) throw fmgame::IoError("failed writing to stdout");
      return;
    }
    // Build in memory first so a failed sweep leaves no partial file behind.
    std::ostringstream buf;
    fmgame::write_sweep_csv(model->params, sweep, buf);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw fmgame::IoError(std::string("cannot open output file: ") + path);
    file << buf.str();
    file.flush();
    if (!file) throw fmgame::IoError(std::string("failed writing output file: ") + path);
  });
}

const char* fmg_last_error(void) { return g_last_error.c_str(); }

const char* fmg_status_name(fmg_status status) {
  switch (status) {
    case FMG_OK: return "ok";
    case FMG_NULL_ARGUMENT: return "null argument";
    case FMG_INVALID_ARGUMENT: return "invalid argument";
    case FMG_IO: return "i/o error";
    case FMG_CONFIG: return "config error";
    case FMG_INVALID_PARAMS: return "invalid parameters";
    case FMG_DOMAIN: return "domain error";
    case FMG_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fmg_regime_name(fmg_regime regime) {
  if (regime < FMG_HARVEST || regime > FMG_DOMINATE) return "?";
  return fmgame::to_string(static_cast<fmgame::Regime>(regime));
}

const char* fmg_scenario_name(fmg_scenario scenario) {
  if (!valid_scenario(scenario)) return "?";
  return fmgame::to_string(static_cast<fmgame::Scenario>(scenario));
}

fmg_status fmg_parse_scenario(const char* name, fmg_scenario* out) {
  if (any_null(name, out)) return null_argument();
  return guarded([&] { *out = static_cast<fmg_scenario>(fmgame::parse_scenario(name)); });
}

}  // extern "C"
