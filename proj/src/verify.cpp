#include "fmgame/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fmgame/closed_form.hpp"
#include "fmgame/extensions.hpp"
#include "fmgame/params.hpp"
#include "fmgame/welfare.hpp"

namespace fmgame {

namespace {

constexpr double kTrapResidual = 1e-8;
constexpr double kSubsidyLimitS = 1e-8;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

class Suite {
 public:
  Suite(const VerifyOptions& opt, const std::function<void(const CheckResult&)>& sink)
      : opt_(opt), sink_(sink) {}

  bool close(double a, double b, double rel) const {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + opt_.abs_tol;
  }

  // Runs body, which returns an empty string on success or a failure detail.
  template <class Body>
  void check(const std::string& name, Body&& body, const std::string& ok_detail = "") {
    CheckResult r{name, false, ""};
    try {
      std::string failure = body();
      r.passed = failure.empty();
      r.detail = r.passed ? ok_detail : failure;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(r);
    if (sink_) sink_(r);
  }

  std::vector<CheckResult> take() { return std::move(results_); }
  const VerifyOptions& opt() const { return opt_; }

 private:
  VerifyOptions opt_;
  const std::function<void(const CheckResult&)>& sink_;
  std::vector<CheckResult> results_;
};

std::vector<double> k_grid(double kmax, int points) {
  std::vector<double> ks(points);
  for (int i = 0; i < points; ++i) {
    ks[i] = i + 1 == points ? kmax : kmax * static_cast<double>(i) / (points - 1);
  }
  return ks;
}

ModelParams with_k(ModelParams p, double k) {
  p.k = k;
  return p;
}

// Empty when the oracle and closed-form equilibria agree.
std::string compare_with_oracle(const Suite& suite, const ModelParams& p, int* high_fee_wins) {
  const auto eq = solve_game(p);
  const auto oracle = oracle_solve_game(p, suite.opt().oracle);
  *high_fee_wins += oracle.high_fee_period2_wins;
  const auto& o = oracle.eq;
  std::ostringstream why;
  if (o.regime != eq.regime) {
    why << "regime " << to_string(o.regime) << " vs " << to_string(eq.regime);
  } else if (o.winner2 != eq.winner2) {
    why << "winner differs";
  } else if (o.strategy.w1 != eq.strategy.w1) {
    why << "w1 " << fmt(o.strategy.w1) << " vs " << fmt(eq.strategy.w1);
  } else if (std::abs(o.strategy.eta1 - eq.strategy.eta1) > oracle.eta_step * (1.0 + 1e-9)) {
    why << "eta1 " << fmt(o.strategy.eta1) << " vs " << fmt(eq.strategy.eta1);
  } else if (!suite.close(oracle.incumbent_profit, incumbent_profit(eq), suite.opt().profit_rel_tol)) {
    why << "incumbent profit " << fmt(oracle.incumbent_profit) << " vs "
        << fmt(incumbent_profit(eq));
  } else {
    return {};
  }
  return "k=" + fmt(p.k) + ": " + why.str();
}

}  // namespace

ModelParams random_params(std::mt19937_64& rng, bool with_subsidy) {
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  ModelParams p;
  p.theta = uniform(1.0, 10.0);
  p.c = uniform(0.25, 4.0);
  p.w_high = uniform(0.05, 0.5) * p.theta;
  p.w_low = uniform(0.0, 0.95) * p.w_high;
  p.eta_cap = uniform(0.1, 3.0);
  p.s = with_subsidy ? uniform(0.0, 1.0) * p.w_low : 0.0;
  p.k = uniform(0.0, 1.0) * k_max(p);
  return p;
}

std::vector<CheckResult> run_verification(const ModelParams& params, const VerifyOptions& options,
                                          const std::function<void(const CheckResult&)>& on_check) {
  Suite suite(options, on_check);
  const double rel = options.rel_tol;

  const auto report = validate(params);
  suite.check("params_valid", [&]() -> std::string {
    if (report.ok()) return {};
    std::string s;
    for (const auto& v : report.violations) s += (s.empty() ? "" : "; ") + v;
    return s;
  });
  if (!report.ok()) return suite.take();

  ModelParams base = params;
  base.s = 0.0;
  const bool subsidy = params.s > 0.0;
  const auto base_report = validate(base);
  if (subsidy) {
    suite.check("baseline_params_valid", [&]() -> std::string {
      return base_report.ok() ? "" : "k exceeds the baseline k_max";
    });
    if (!base_report.ok()) return suite.take();
  }

  const double kmax = k_max(base);
  suite.check("k_max_positive", [&]() -> std::string {
    return kmax > 0.0 ? "" : "k_max = " + fmt(kmax);
  }, "k_max = " + fmt(kmax));
  const auto ks = k_grid(kmax, std::max(options.k_grid, 2));

  suite.check("best_response_optimality", [&]() -> std::string {
    for (const auto& p : {base, params}) {
      const auto eq = solve_game(p);
      const double q1 = oracle_best_effort(p.theta - eq.strategy.w1 + p.s, p.c,
                                           1.0 + eq.strategy.eta1, options.oracle.effort_search);
      if (!suite.close(q1, eq.period1.effort, rel)) {
        return "Q1 " + fmt(eq.period1.effort) + " vs numeric " + fmt(q1);
      }
      const bool inc = eq.winner2 == Developer::Incumbent;
      const double w2 = inc ? eq.w2 : eq.w2_tilde;
      const double denom = inc ? (1.0 + p.k * eq.period1.engagement) * (1.0 + eq.eta2)
                               : (1.0 + eq.strategy.eta1) * (1.0 + eq.eta2_tilde);
      const double q2 =
          oracle_best_effort(p.theta - w2 + p.s, p.c, denom, options.oracle.effort_search);
      if (!suite.close(q2, eq.period2.effort, rel)) {
        return "Q2 " + fmt(eq.period2.effort) + " vs numeric " + fmt(q2);
      }
    }
    return {};
  });

  const auto th = regime_thresholds(base);
  suite.check("threshold_boundaries_exact", [&]() -> std::string {
    for (double kb : {th.k_bar_1, th.k_bar_2}) {
      if (!(kb > 0.0 && kb <= kmax)) continue;
      auto sp = scenario_profits(with_k(base, kb));
      double v[3] = {sp.pi_s0, sp.pi_s1, sp.pi_s2};
      std::sort(v, v + 3);
      if (!suite.close(v[2], v[1], rel)) {
        return "scenario profits do not tie at k=" + fmt(kb);
      }
    }
    for (double k : ks) {
      if (k == 0.0) continue;
      const auto p = with_k(base, k);
      const double ratio_h = winning_ratio(p, {p.w_high, eta_bar_high(p)});
      const double ratio_l = winning_ratio(p, {p.w_low, eta_bar_low(p)});
      if (!suite.close(ratio_h, 1.0, rel) || !suite.close(ratio_l, 1.0, rel)) {
        return "winning ratio at the openness threshold is not 1 at k=" + fmt(k);
      }
    }
    return {};
  }, "k_bar_1 = " + fmt(th.k_bar_1) + ", k_bar_2 = " + fmt(th.k_bar_2));

  suite.check("openness_thresholds_ordered", [&]() -> std::string {
    double prev_h = -1.0;
    double prev_l = -1.0;
    for (double k : ks) {
      const auto p = with_k(base, k);
      const double h = eta_bar_high(p);
      const double l = eta_bar_low(p);
      if (h > l + options.abs_tol) return "eta_bar_high > eta_bar_low at k=" + fmt(k);
      if (l > p.eta_cap * (1.0 + rel)) return "eta_bar_low > eta_cap at k=" + fmt(k);
      if (h < prev_h || l < prev_l) return "openness thresholds decrease at k=" + fmt(k);
      prev_h = h;
      prev_l = l;
    }
    return {};
  });

  suite.check("regime_argmax_consistency", [&]() -> std::string {
    int changes = 0;
    Regime prev = Regime::Harvest;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto p = with_k(base, ks[i]);
      const auto eq = solve_game(p);
      const auto sp = scenario_profits(p);
      const double best = std::max({sp.pi_s0, sp.pi_s1, sp.pi_s2});
      if (!suite.close(sp.of(eq.regime), best, rel)) return "regime not argmax at k=" + fmt(ks[i]);
      if (i > 0 && eq.regime != prev) ++changes;
      if (static_cast<int>(eq.regime) < static_cast<int>(prev)) {
        return "regime order reverses at k=" + fmt(ks[i]);
      }
      prev = eq.regime;
    }
    return changes <= 2 ? "" : "regime changes " + std::to_string(changes) + " times";
  });

  suite.check("eta_prime_ordering", [&]() -> std::string {
    if (!th.eta_prime) return {};
    const double t = rel * std::max({1.0, std::abs(th.k_bar_12), std::abs(th.k_bar_13)});
    const bool low = base.eta_cap <= *th.eta_prime;
    const bool ok = low ? (th.k_bar_13 <= th.k_bar_23 + t && th.k_bar_23 <= th.k_bar_12 + t)
                        : (th.k_bar_12 <= th.k_bar_23 + t && th.k_bar_23 <= th.k_bar_13 + t);
    return ok ? "" : "threshold ordering does not match eta_cap vs eta' = " + fmt(*th.eta_prime);
  }, th.eta_prime ? "eta' = " + fmt(*th.eta_prime) : "eta' undefined");

  int high_fee_wins = 0;
  suite.check("oracle_equivalence_sweep", [&]() -> std::string {
    for (double k : ks) {
      auto why = compare_with_oracle(suite, with_k(base, k), &high_fee_wins);
      if (!why.empty()) return why;
    }
    return {};
  }, std::to_string(ks.size()) + " points");

  suite.check("oracle_equivalence_random", [&]() -> std::string {
    std::mt19937_64 rng(options.seed);
    for (int i = 0; i < options.random_sets; ++i) {
      const auto p = random_params(rng, false);
      auto why = compare_with_oracle(suite, p, &high_fee_wins);
      if (!why.empty()) return "set " + std::to_string(i) + ", " + why;
    }
    return {};
  }, std::to_string(options.random_sets) + " sets");

  suite.check("high_fee_never_wins_period2", [&]() -> std::string {
    return high_fee_wins == 0 ? "" : std::to_string(high_fee_wins) + " grid points";
  });

  suite.check("welfare_table_agreement", [&]() -> std::string {
    std::mt19937_64 rng(options.seed + 1);
    for (int i = 0; i < options.random_sets; ++i) {
      const auto p = random_params(rng, subsidy);
      for (auto r : {Regime::Harvest, Regime::Defend, Regime::Dominate}) {
        const auto table = welfare_table(p, r);
        const auto built = welfare_rebuild(p, scenario_outcome(p, r));
        const double a[4] = {table.dev1, table.dev2, table.deployer, table.consumer};
        const double b[4] = {built.dev1, built.dev2, built.deployer, built.consumer};
        for (int j = 0; j < 4; ++j) {
          if (!suite.close(a[j], b[j], rel)) {
            return "set " + std::to_string(i) + " " + to_string(r) + " component " +
                   std::to_string(j);
          }
        }
      }
    }
    for (double k : ks) welfare_baseline(with_k(base, k));
    return {};
  });

  suite.check("mandate_social_constant", [&]() -> std::string {
    const double first = welfare_mandate(with_k(base, 0.0)).social;
    for (double k : ks) {
      const double sw = welfare_mandate(with_k(base, k)).social;
      if (!suite.close(sw, first, rel)) return "mandate SW varies at k=" + fmt(k);
      if (welfare_mandate(with_k(base, k)).dev2 <= 0.0 && base.w_low > 0.0) {
        return "entrant earns nothing under the mandate at k=" + fmt(k);
      }
    }
    return {};
  });

  suite.check("baseline_social_increasing_after_harvest", [&]() -> std::string {
    double prev = 0.0;
    Regime prev_regime = Regime::Harvest;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto p = with_k(base, ks[i]);
      const auto eq = solve_baseline(p);
      const double sw = welfare_of(p, eq).social;
      if (i > 0 && eq.regime == prev_regime && eq.regime != Regime::Harvest &&
          sw < prev - rel * std::abs(prev)) {
        return "SW falls within " + std::string(to_string(eq.regime)) + " at k=" + fmt(ks[i]);
      }
      prev = sw;
      prev_regime = eq.regime;
    }
    return {};
  });

  suite.check("openness_trap_root", [&]() -> std::string {
    const auto trap = openness_trap_threshold(base);
    if (!trap.found || std::abs(trap.residual) < kTrapResidual) return {};
    const bool at_regime_change =
        std::abs(trap.k_bar - th.k_bar_2) <= 1e-12 * std::max(1.0, th.k_bar_2);
    return trap.at_jump && at_regime_change ? "" : "residual " + fmt(trap.residual);
  }, [&] {
    try {
      const auto trap = openness_trap_threshold(base);
      if (!trap.found) return std::string("no crossing");
      return "k_bar = " + fmt(trap.k_bar) + (trap.at_jump ? " (regime change)" : "");
    } catch (const std::exception&) {
      return std::string();
    }
  }());

  suite.check("integrated_matches_oracle", [&]() -> std::string {
    const auto cf = solve_integrated(params);
    const auto o = oracle_solve_integrated(params, options.oracle);
    if (o.eta1v != cf.eta1v || o.eta2v != cf.eta2v) {
      return "oracle openness (" + fmt(o.eta1v) + ", " + fmt(o.eta2v) + ") is not eta_cap";
    }
    if (!suite.close(o.q1v, cf.q1v, rel) || !suite.close(o.q2v, cf.q2v, rel)) {
      return "efforts (" + fmt(o.q1v) + ", " + fmt(o.q2v) + ") vs (" + fmt(cf.q1v) + ", " +
             fmt(cf.q2v) + ")";
    }
    if (!suite.close(o.profit, cf.profit, rel)) return "profit " + fmt(o.profit) + " vs " + fmt(cf.profit);
    return {};
  });

  suite.check("integrated_first_period_effort_dominates", [&]() -> std::string {
    for (double k : ks) {
      const auto p = with_k(base, k);
      if (!(solve_integrated(p).q1v > solve_baseline(p).period1.effort)) {
        return "Q1v <= Q1 at k=" + fmt(k);
      }
    }
    return {};
  });

  suite.check("integration_thresholds_located", [&]() -> std::string {
    const auto it = integration_thresholds(base);
    for (const auto* c : {&it.chain_profit, &it.consumer, &it.social}) {
      if (c->kind != CrossingKind::Root || std::abs(c->residual) <= kTrapResidual) continue;
      const bool at_regime_change =
          std::abs(c->k - th.k_bar_1) <= 1e-12 * std::max(1.0, th.k_bar_1) ||
          std::abs(c->k - th.k_bar_2) <= 1e-12 * std::max(1.0, th.k_bar_2);
      if (!c->at_jump || !at_regime_change) return "crossing residual " + fmt(c->residual);
    }
    return {};
  }, [&] {
    try {
      const auto it = integration_thresholds(base);
      auto show = [](const Crossing& c) {
        std::string s = to_string(c.kind);
        if (c.kind == CrossingKind::Root) s += " " + fmt(c.k) + (c.at_jump ? " (regime change)" : "");
        return s;
      };
      return "dv " + show(it.chain_profit) + ", cv " + show(it.consumer) + ", sv " + show(it.social);
    } catch (const std::exception&) {
      return std::string();
    }
  }());

  if (subsidy) {
    suite.check("subsidy_limit", [&]() -> std::string {
      ModelParams tiny = params;
      tiny.s = kSubsidyLimitS;
      const auto sub = solve_subsidized(tiny);
      const auto eq = solve_baseline(base);
      const auto w = welfare_baseline(base);
      const auto tb = regime_thresholds(base);
      const double pairs[][2] = {
          {sub.eq.strategy.eta1, eq.strategy.eta1}, {sub.eq.period1.effort, eq.period1.effort},
          {sub.eq.period2.effort, eq.period2.effort}, {sub.welfare.social, w.social},
          {sub.k_bar_1g, tb.k_bar_1}, {sub.k_bar_2g, tb.k_bar_2}};
      if (sub.eq.regime != eq.regime) return "regime differs at s=" + fmt(kSubsidyLimitS);
      for (const auto& pr : pairs) {
        if (!suite.close(pr[0], pr[1], 1e-6)) return fmt(pr[0]) + " vs " + fmt(pr[1]);
      }
      return {};
    });

    suite.check("subsidy_threshold_shift", [&]() -> std::string {
      const auto sub = solve_subsidized(params);
      if (!(sub.k_bar_1g > th.k_bar_1)) return "k_bar_1g <= k_bar_1";
      if (!(sub.k_bar_2g > th.k_bar_2)) return "k_bar_2g <= k_bar_2";
      if (sub.eta_bar_hg < eta_bar_high(base) || sub.eta_bar_lg < eta_bar_low(base)) {
        return "subsidized openness thresholds below baseline";
      }
      return {};
    }, [&] {
      try {
        const auto sub = solve_subsidized(params);
        return "k_bar_1g = " + fmt(sub.k_bar_1g) + ", k_bar_2g = " + fmt(sub.k_bar_2g);
      } catch (const std::exception&) {
        return std::string();
      }
    }());

    suite.check("subsidized_welfare_tables", [&]() -> std::string {
      const double kmax_s = k_max(params);
      for (double k : k_grid(kmax_s, std::max(options.k_grid, 2))) {
        const auto sub = solve_subsidized(with_k(params, k));
        const auto& w = sub.welfare;
        if (!suite.close(w.social, w.dev1 + w.dev2 + w.deployer + w.consumer, 1e-12)) {
          return "social welfare is not the sum of components at k=" + fmt(k);
        }
      }
      return {};
    });
  }

  return suite.take();
}

}  // namespace fmgame
