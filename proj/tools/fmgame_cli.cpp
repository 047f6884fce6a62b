#include <cstdio>
#include <cstring>
#include <string>

#include <CLI11.hpp>

#include "fmgame/fmgame.h"

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kIoError = 2, kInvalidParams = 3 };

int exit_code(fmg_status status) {
  switch (status) {
    case FMG_OK: return kOk;
    case FMG_IO: return kIoError;
    case FMG_INTERNAL: return kVerifyFailed;
    default: return kInvalidParams;
  }
}

class Model {
 public:
  ~Model() { fmg_model_destroy(model_); }
  fmg_model* get() const { return model_; }
  fmg_model** out() { return &model_; }

 private:
  fmg_model* model_ = nullptr;
};

int report(fmg_status status) {
  std::fprintf(stderr, "error: %s\n", fmg_last_error());
  return exit_code(status);
}

// Loads and validates the config; on failure prints a diagnostic and
// returns the exit code.
int load(const std::string& path, Model& model) {
  fmg_status st = fmg_model_load(path.c_str(), model.out());
  if (st != FMG_OK) return report(st);
  st = fmg_model_validate(model.get());
  if (st == FMG_OK) return kOk;

  const std::string message = fmg_last_error();
  std::fprintf(stderr, "error: %s\n", message.c_str());
  double kmax = 0.0;
  fmg_params p;
  fmg_model_get_params(model.get(), &p);
  if (message.find("k exceeds k_max") != std::string::npos &&
      fmg_k_max(model.get(), &kmax) == FMG_OK) {
    std::fprintf(stderr, "k = %.12g exceeds k_max = %.12g\n", p.k, kmax);
  }
  return exit_code(st);
}

void print_params(const fmg_params& p) {
  std::printf("parameters: theta=%.12g c=%.12g w_high=%.12g w_low=%.12g eta_cap=%.12g k=%.12g s=%.12g\n",
              p.theta, p.c, p.w_high, p.w_low, p.eta_cap, p.k, p.s);
}

void print_equilibrium(const fmg_equilibrium& eq) {
  std::printf("regime: %s\n", fmg_regime_name(eq.regime));
  std::printf("strategy: w1=%.12g eta1=%.12g\n", eq.w1, eq.eta1);
  std::printf("period 1: Q1=%.12g fee_paid=%.12g openness=%.12g\n", eq.period1.effort,
              eq.period1.fee_paid, eq.period1.openness);
  std::printf("period 2: winner=%s Q2=%.12g fee_paid=%.12g openness=%.12g\n",
              eq.winner2 == FMG_INCUMBENT ? "incumbent" : "entrant", eq.period2.effort,
              eq.period2.fee_paid, eq.period2.openness);
}

void print_welfare(const char* label, const fmg_welfare& w) {
  std::printf("%s: dev1=%.12g dev2=%.12g deployer=%.12g consumer=%.12g social=%.12g\n", label,
              w.dev1, w.dev2, w.deployer, w.consumer, w.social);
}

int cmd_solve(const std::string& config) {
  Model model;
  if (int rc = load(config, model)) return rc;

  fmg_params p;
  fmg_model_get_params(model.get(), &p);
  fmg_thresholds th;
  fmg_status st = fmg_regime_thresholds(model.get(), &th);
  if (st != FMG_OK) return report(st);

  print_params(p);
  std::printf("k_max: %.12g\n", th.k_max);
  std::printf("thresholds: k_bar_1=%.12g k_bar_2=%.12g k_bar_12=%.12g k_bar_13=%.12g k_bar_23=%.12g\n",
              th.k_bar_1, th.k_bar_2, th.k_bar_12, th.k_bar_13, th.k_bar_23);
  std::printf("openness thresholds: eta_bar_high=%.12g eta_bar_low=%.12g", th.eta_bar_high,
              th.eta_bar_low);
  if (th.eta_prime_defined) {
    std::printf(" eta_prime=%.12g\n", th.eta_prime);
  } else {
    std::printf(" eta_prime=undefined\n");
  }

  fmg_subsidized sub;
  st = fmg_solve_subsidized(model.get(), &sub);
  if (st != FMG_OK) return report(st);
  print_equilibrium(sub.eq);
  print_welfare("welfare", sub.welfare);
  if (p.s > 0.0) {
    std::printf("subsidy: spend=%.12g social_net_of_subsidy=%.12g\n", sub.subsidy_spend,
                sub.social_net_of_subsidy);
  }
  return kOk;
}

int cmd_sweep(const std::string& config, const std::string& param, double lo, double hi,
              int steps, const std::string& scenario, const std::string& out) {
  Model model;
  fmg_status st = fmg_model_load(config.c_str(), model.out());
  if (st != FMG_OK) return report(st);

  fmg_sweep_spec spec;
  spec.parameter = param.c_str();
  spec.lo = lo;
  spec.hi = hi;
  spec.steps = steps;
  st = fmg_parse_scenario(scenario.c_str(), &spec.scenario);
  if (st != FMG_OK) return report(st);

  st = fmg_sweep_csv_file(model.get(), &spec, out.empty() ? nullptr : out.c_str());
  return st == FMG_OK ? kOk : report(st);
}

void print_crossing(const char* name, const fmg_crossing& c) {
  switch (c.kind) {
    case FMG_CROSSING_ROOT:
      if (c.at_jump) {
        std::printf("%s: %.12g (at a regime change)\n", name, c.k);
      } else {
        std::printf("%s: %.12g (residual %.3g)\n", name, c.k, c.residual);
      }
      break;
    case FMG_CROSSING_ALWAYS:
      std::printf("%s: integration beneficial for every admissible k\n", name);
      break;
    case FMG_CROSSING_NEVER:
      std::printf("%s: integration never beneficial\n", name);
      break;
    case FMG_CROSSING_IRREGULAR:
      std::printf("%s: %d sign changes, first upward crossing %.12g\n", name, c.sign_changes, c.k);
      break;
  }
}

int cmd_policy(const std::string& kind, const std::string& config) {
  Model model;
  if (int rc = load(config, model)) return rc;
  fmg_params p;
  fmg_model_get_params(model.get(), &p);
  print_params(p);

  fmg_status st = FMG_OK;
  if (kind == "integration") {
    fmg_integrated v;
    fmg_welfare base;
    fmg_crossing dv, cv, sv;
    if ((st = fmg_solve_integrated(model.get(), &v)) != FMG_OK) return report(st);
    if ((st = fmg_model_set(model.get(), "s", 0.0)) != FMG_OK) return report(st);
    if ((st = fmg_welfare_baseline(model.get(), &base)) != FMG_OK) return report(st);
    if ((st = fmg_integration_thresholds(model.get(), &dv, &cv, &sv)) != FMG_OK) return report(st);
    std::printf("integrated: eta1v=%.12g eta2v=%.12g Q1v=%.12g Q2v=%.12g\n", v.eta1v, v.eta2v,
                v.q1v, v.q2v);
    std::printf("chain profit: integrated=%.12g decentralized=%.12g\n", v.profit,
                base.dev1 + base.deployer);
    std::printf("consumer surplus: integrated=%.12g decentralized=%.12g\n", v.consumer,
                base.consumer);
    std::printf("social welfare: integrated=%.12g decentralized=%.12g\n", v.social, base.social);
    print_crossing("k_bar_dv", dv);
    print_crossing("k_bar_cv", cv);
    print_crossing("k_bar_sv", sv);
    return kOk;
  }

  fmg_policy pc;
  const char* label = kind == "mandate" ? "mandate" : "subsidy";
  st = kind == "mandate" ? fmg_mandate_comparison(model.get(), &pc)
                         : fmg_subsidy_comparison(model.get(), &pc);
  if (st != FMG_OK) return report(st);

  std::printf("baseline regime: %s (w1=%.12g eta1=%.12g Q1=%.12g Q2=%.12g)\n",
              fmg_regime_name(pc.baseline.regime), pc.baseline.w1, pc.baseline.eta1,
              pc.baseline.period1.effort, pc.baseline.period2.effort);
  std::printf("%s regime: %s (w1=%.12g eta1=%.12g Q1=%.12g Q2=%.12g)\n", label,
              fmg_regime_name(pc.counterfactual.regime), pc.counterfactual.w1,
              pc.counterfactual.eta1, pc.counterfactual.period1.effort,
              pc.counterfactual.period2.effort);
  print_welfare("baseline welfare", pc.baseline_welfare);
  print_welfare((std::string(label) + " welfare").c_str(), pc.counterfactual_welfare);
  print_welfare("change", pc.delta);

  if (kind == "mandate") {
    fmg_trap trap;
    if ((st = fmg_openness_trap_threshold(model.get(), &trap)) != FMG_OK) return report(st);
    if (trap.found) {
      std::printf("openness trap: mandate lowers social welfare for k > %.12g\n", trap.k_bar);
    } else {
      std::printf("openness trap: no crossing on (k_bar_1, k_max]\n");
    }
  } else {
    static const char* names[] = {"harvest_both", "defend_to_harvest", "delayed_dominate",
                                  "other"};
    std::printf("subsidy spend: %.12g\n", pc.subsidy_spend);
    std::printf("social welfare net of subsidy: %.12g\n",
                pc.counterfactual_welfare.social - pc.subsidy_spend);
    std::printf("interval: %s\n", names[pc.interval]);
  }
  return kOk;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("%s %s%s%s\n", passed ? "PASS" : "FAIL", name, *detail ? ": " : "", detail);
  std::fflush(stdout);
}

int cmd_verify(const std::string& config, double tolerance) {
  Model model;
  if (int rc = load(config, model)) return rc;

  fmg_verify_options opt;
  fmg_verify_options_default(&opt);
  if (tolerance >= 0.0) {
    opt.rel_tol = tolerance;
    opt.profit_rel_tol = tolerance;
    opt.abs_tol = tolerance;
  }
  int failed = 0;
  const fmg_status st = fmg_verify(model.get(), &opt, print_check, nullptr, &failed);
  if (st != FMG_OK) return report(st);
  std::printf("%s: %d check(s) failed\n", failed ? "FAILED" : "OK", failed);
  return failed ? kVerifyFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-period foundation-model licensing game: solve, sweep, compare policies, verify"};
  app.require_subcommand(1);

  std::string config;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Parameter file (key=value)")->required();
  };

  auto* solve = app.add_subcommand("solve", "Solve the game and print the equilibrium");
  add_config(solve);

  std::string param = "k";
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  std::string scenario = "baseline";
  std::string out;
  auto* sweep = app.add_subcommand("sweep", "Sweep a parameter and write CSV");
  add_config(sweep);
  sweep->add_option("--param", param, "Swept parameter (k or s)")->check(CLI::IsMember({"k", "s"}));
  sweep->add_option("--lo", lo, "Lower end of the range")->required();
  sweep->add_option("--hi", hi, "Upper end of the range")->required();
  sweep->add_option("--steps", steps, "Number of grid points")->required();
  sweep->add_option("--scenario", scenario, "baseline, mandate, integration or subsidy");
  sweep->add_option("--out", out, "Output CSV path (default stdout)");

  std::string policy_kind;
  auto* policy = app.add_subcommand("policy", "Compare the baseline with a policy");
  policy->add_option("kind", policy_kind, "mandate, integration or subsidy")
      ->required()
      ->check(CLI::IsMember({"mandate", "integration", "subsidy"}));
  add_config(policy);

  double tolerance = -1.0;
  auto* verify = app.add_subcommand("verify", "Run the oracle and invariant checks");
  add_config(verify);
  verify->add_option("--tolerance", tolerance, "Override all comparison tolerances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidParams;
  }

  if (*solve) return cmd_solve(config);
  if (*sweep) return cmd_sweep(config, param, lo, hi, steps, scenario, out);
  if (*policy) return cmd_policy(policy_kind, config);
  return cmd_verify(config, tolerance);
}
