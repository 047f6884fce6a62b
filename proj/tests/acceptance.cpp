// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fmgame/closed_form.hpp"
#include "fmgame/extensions.hpp"
#include "fmgame/numeric.hpp"
#include "fmgame/oracle.hpp"
#include "fmgame/verify.hpp"
#include "fmgame/welfare.hpp"

using namespace fmgame;

namespace {

using Clock = std::chrono::steady_clock;

ModelParams set_a(double k = 0.0) { return {5.0, 1.0, 2.5, 0.5, 1.5, k, 0.0}; }
ModelParams set_b(double k, double s) { return {5.0, 1.0, 2.5, 0.8, 1.5, k, s}; }

ModelParams with_k(ModelParams p, double k) {
  p.k = k;
  return p;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> sweep_grid(double kmax, int n) {
  std::vector<double> ks(n);
  for (int i = 0; i < n; ++i) ks[i] = i + 1 == n ? kmax : kmax * i / (n - 1);
  return ks;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail.str("");
      detail << what;
    }
  }
};

int failures = 0;

void run(const char* id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail.str("");
    out.detail << "exception: " << e.what();
  }
  if (!out.pass) ++failures;
  std::printf("%s %s %s: %s\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.str().c_str());
  std::fflush(stdout);
}

// Regime chosen by the scenario-profit argmax alone.
Regime argmax_regime(const ModelParams& p) { return best_scenario(scenario_profits(p)); }

void ac1(Outcome& out) {
  const auto start = Clock::now();
  const auto base = set_a();
  const double kmax = k_max(base);
  const auto th = regime_thresholds(base);
  const auto ks = sweep_grid(kmax, 200);

  std::vector<Equilibrium> eqs;
  for (double k : ks) eqs.push_back(solve_baseline(with_k(base, k)));

  std::vector<Regime> order{eqs.front().regime};
  std::vector<double> breaks;
  for (std::size_t i = 1; i < eqs.size(); ++i) {
    if (eqs[i].regime == eqs[i - 1].regime) continue;
    order.push_back(eqs[i].regime);
    const Regime before = eqs[i - 1].regime;
    breaks.push_back(numeric::bisect_predicate(
        [&](double k) { return argmax_regime(with_k(base, k)) == before; }, ks[i - 1], ks[i]));
  }
  out.require(order == std::vector<Regime>{Regime::Harvest, Regime::Defend, Regime::Dominate},
              "regime sequence is not Harvest, Defend, Dominate");
  out.require(breaks.size() == 2, "expected two breakpoints");
  if (breaks.size() == 2) {
    out.require(std::abs(breaks[0] - th.k_bar_1) <= 1e-6, "first breakpoint off k_bar_1");
    out.require(std::abs(breaks[1] - th.k_bar_2) <= 1e-6, "second breakpoint off k_bar_2");
  }

  // eta1: flat at eta_cap, drops at k_bar_1, then rises.
  bool harvest_at_cap = true, rising_after = true;
  double min_after = base.eta_cap;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const double e = eqs[i].strategy.eta1;
    if (eqs[i].regime == Regime::Harvest) harvest_at_cap &= e == base.eta_cap;
    else min_after = std::min(min_after, e);
    if (i > 0 && eqs[i - 1].regime != Regime::Harvest) rising_after &= e >= eqs[i - 1].strategy.eta1;
  }
  out.require(harvest_at_cap, "eta1 below eta_cap in Harvest");
  out.require(min_after < base.eta_cap, "eta1 never drops");
  out.require(rising_after, "eta1 falls after the drop");
  out.require(eqs.back().strategy.eta1 > min_after, "eta1 does not rise again");

  const double elapsed = seconds_since(start);
  out.require(elapsed < 1.0, "runtime above 1 s");
  if (out.pass) {
    out.detail << "breakpoints " << breaks[0] << ", " << breaks[1] << " vs k_bar_1 " << th.k_bar_1
               << ", k_bar_2 " << th.k_bar_2 << "; eta1 1.5 -> " << min_after << " -> "
               << eqs.back().strategy.eta1 << "; " << elapsed << " s";
  }
}

std::string oracle_mismatch(const ModelParams& p, double* worst) {
  const auto eq = solve_game(p);
  const auto o = oracle_solve_game(p);
  const double profit = incumbent_profit(eq);
  const double rel = std::abs(o.incumbent_profit - profit) / std::max(1e-300, std::abs(profit));
  if (profit != 0.0) *worst = std::max(*worst, rel);
  std::ostringstream why;
  if (o.eq.regime != eq.regime) why << "regime";
  else if (o.eq.winner2 != eq.winner2) why << "winner";
  else if (o.eq.strategy.w1 != eq.strategy.w1) why << "w1";
  else if (std::abs(o.eq.strategy.eta1 - eq.strategy.eta1) > o.eta_step * (1 + 1e-9)) why << "eta1";
  else if (!rel_close(o.incumbent_profit, profit, 1e-5)) why << "profit";
  else if (o.high_fee_period2_wins != 0) why << "high fee wins period 2";
  else return {};
  why << " differs at theta=" << p.theta << " c=" << p.c << " w_high=" << p.w_high
      << " w_low=" << p.w_low << " eta_cap=" << p.eta_cap << " k=" << p.k;
  return why.str();
}

void ac2(Outcome& out) {
  const auto start = Clock::now();
  double worst = 0.0;
  const auto base = set_a();
  for (double k : sweep_grid(k_max(base), 200)) {
    const auto why = oracle_mismatch(with_k(base, k), &worst);
    out.require(why.empty(), "sweep: " + why);
  }
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 100; ++i) {
    const auto why = oracle_mismatch(random_params(rng, false), &worst);
    out.require(why.empty(), "random set " + std::to_string(i) + ": " + why);
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed < 60.0, "runtime above 60 s");
  if (out.pass) {
    out.detail << "300 equilibria agree; worst profit rel. error " << worst << "; " << elapsed
               << " s";
  }
}

void ac3(Outcome& out) {
  const auto base = set_a();
  const auto th = regime_thresholds(base);
  const double kmax = k_max(base);
  const auto trap = openness_trap_threshold(base);
  out.require(trap.found, "no crossing found");
  if (!trap.found) return;
  out.require(trap.k_bar > th.k_bar_1 && trap.k_bar <= kmax, "root outside (k_bar_1, k_max]");
  out.require(std::abs(trap.residual) < 1e-8, "residual above 1e-8");

  const auto m = welfare_mandate(base);
  double min_gap = INFINITY;
  for (int i = 1; i <= 10; ++i) {
    const double k = trap.k_bar + (kmax - trap.k_bar) * i / 10.0;
    const auto b = welfare_baseline(with_k(base, k));
    out.require(m.deployer < b.deployer, "mandate does not lower deployer profit");
    out.require(m.consumer < b.consumer, "mandate does not lower consumer surplus");
    out.require(m.social < b.social, "mandate does not lower social welfare");
    min_gap = std::min({min_gap, b.deployer - m.deployer, b.consumer - m.consumer,
                        b.social - m.social});
  }
  if (out.pass) {
    out.detail.precision(12);
    out.detail << "k_bar = " << trap.k_bar << ", residual " << trap.residual
               << "; smallest loss over 10 samples " << min_gap;
  }
}

void ac4(Outcome& out) {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  int rows = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(rng, i % 2 == 1);
    for (auto r : {Regime::Harvest, Regime::Defend, Regime::Dominate}) {
      const auto t = welfare_table(p, r);
      const auto b = welfare_rebuild(p, scenario_outcome(p, r));
      const double a[4] = {t.dev1, t.dev2, t.deployer, t.consumer};
      const double c[4] = {b.dev1, b.dev2, b.deployer, b.consumer};
      for (int j = 0; j < 4; ++j) {
        const double err = std::abs(a[j] - c[j]) / std::max({1e-300, std::abs(a[j]), std::abs(c[j])});
        worst = std::max(worst, err);
        out.require(err <= 1e-6, std::string(to_string(r)) + " row, component " + std::to_string(j) +
                                     ", set " + std::to_string(i));
      }
      ++rows;
    }
  }
  if (out.pass) out.detail << rows << " rows x 4 components; worst rel. error " << worst;
}

void ac5(Outcome& out) {
  const auto base = set_a();
  const auto v = solve_integrated(with_k(base, 0.2));
  out.require(v.q1v == 6.25, "Q1v is not 6.25");

  const auto o = oracle_solve_integrated(with_k(base, 0.2));
  out.require(o.eta1v == base.eta_cap && o.eta2v == base.eta_cap, "oracle openness not eta_cap");
  out.require(rel_close(o.q1v, v.q1v, 1e-6) && rel_close(o.q2v, v.q2v, 1e-6),
              "oracle efforts differ from the closed form");
  out.require(rel_close(o.profit, v.profit, 1e-6), "oracle profit differs from the closed form");

  const auto it = integration_thresholds(base);
  out.require(it.chain_profit.kind == CrossingKind::Root, "no single chain-profit crossing");
  out.require(it.consumer.kind == CrossingKind::Root, "no single consumer crossing");
  const double lo = std::min(it.chain_profit.k, it.consumer.k);
  const double hi = std::max(it.chain_profit.k, it.consumer.k);
  int lose_lose = 0, mixed = 0, win_win = 0;
  for (double k : sweep_grid(k_max(base), 200)) {
    const auto p = with_k(base, k);
    const auto vi = integrated_closed_form(p);
    const auto w = welfare_baseline(p);
    const bool chain = vi.profit >= w.dev1 + w.deployer;
    const bool consumer = vi.consumer >= w.consumer;
    if (k < lo) {
      out.require(!chain && !consumer, "not lose-lose below min threshold");
      ++lose_lose;
    } else if (k >= hi) {
      out.require(chain && consumer, "not win-win above max threshold");
      ++win_win;
    } else if (k > lo) {
      out.require(chain != consumer, "not mixed between thresholds");
      ++mixed;
    }
  }
  out.require(lose_lose > 0 && mixed > 0 && win_win > 0, "a region is empty on the sweep");
  if (out.pass) {
    out.detail << "Q1v = 6.25; oracle (" << o.q1v << ", " << o.q2v << ") at eta " << o.eta1v
               << "; k_bar_dv " << it.chain_profit.k << ", k_bar_cv " << it.consumer.k
               << "; lose-lose/mixed/win-win points " << lose_lose << "/" << mixed << "/"
               << win_win;
  }
}

void ac6(Outcome& out) {
  const auto base = regime_thresholds(set_b(0.0, 0.0));
  const auto sub = solve_subsidized(set_b(0.0, 0.5));
  out.require(sub.k_bar_1g > base.k_bar_1, "k_bar_1g <= k_bar_1");
  out.require(sub.k_bar_2g > base.k_bar_2, "k_bar_2g <= k_bar_2");
  const double margin = 1e-9;
  double worst_a = INFINITY, worst_b = INFINITY;
  for (int i = 1; i <= 5; ++i) {
    const double k = base.k_bar_1 + (sub.k_bar_1g - base.k_bar_1) * i / 6.0;
    const auto pc = subsidy_comparison(set_b(k, 0.5));
    const auto& d = pc.delta;
    out.require(d.dev1 > margin && d.dev2 > margin && d.deployer > margin && d.consumer > margin,
                "a component does not improve on (k_bar_1, k_bar_1g)");
    worst_a = std::min({worst_a, d.dev1, d.dev2, d.deployer, d.consumer});
  }
  for (int i = 1; i <= 5; ++i) {
    const double k = base.k_bar_2 + (sub.k_bar_2g - base.k_bar_2) * i / 6.0;
    const auto pc = subsidy_comparison(set_b(k, 0.5));
    const double dq1 = pc.baseline.period1.effort - pc.counterfactual.period1.effort;
    const double dq2 = pc.baseline.period2.effort - pc.counterfactual.period2.effort;
    out.require(dq1 > margin && dq2 > margin && -pc.delta.social > margin,
                "efforts or social welfare do not fall on (k_bar_2, k_bar_2g)");
    worst_b = std::min({worst_b, dq1, dq2, -pc.delta.social});
  }
  if (out.pass) {
    out.detail << "k_bar_1 " << base.k_bar_1 << " -> " << sub.k_bar_1g << ", k_bar_2 "
               << base.k_bar_2 << " -> " << sub.k_bar_2g << "; smallest gain " << worst_a
               << ", smallest fall " << worst_b;
  }
}

void ac7(Outcome& out) {
  double worst = 0.0;
  auto same = [&](double a, double b, const char* what) {
    const double err = std::abs(a - b) / std::max(1.0, std::abs(b));
    worst = std::max(worst, err);
    out.require(err <= 1e-6, std::string(what) + " differs at s = 1e-8");
  };
  for (const auto& p0 : {set_a(0.1), set_a(0.2), set_a(0.25), set_b(0.03, 0.0), set_b(0.1, 0.0),
                         set_b(0.2, 0.0)}) {
    auto p = p0;
    p.s = 1e-8;
    const auto sub = solve_subsidized(p);
    const auto eq = solve_baseline(p0);
    const auto w = welfare_baseline(p0);
    const auto th = regime_thresholds(p0);
    out.require(sub.eq.regime == eq.regime, "regime differs at s = 1e-8");
    same(sub.eq.strategy.w1, eq.strategy.w1, "w1");
    same(sub.eq.strategy.eta1, eq.strategy.eta1, "eta1");
    same(sub.eq.period1.effort, eq.period1.effort, "Q1");
    same(sub.eq.period2.effort, eq.period2.effort, "Q2");
    same(sub.welfare.dev1, w.dev1, "dev1");
    same(sub.welfare.dev2, w.dev2, "dev2");
    same(sub.welfare.deployer, w.deployer, "deployer");
    same(sub.welfare.consumer, w.consumer, "consumer");
    same(sub.welfare.social, w.social, "social");
    same(sub.k_bar_1g, th.k_bar_1, "k_bar_1");
    same(sub.k_bar_2g, th.k_bar_2, "k_bar_2");
    same(sub.eta_bar_hg, eta_bar_high(p0), "eta_bar_high");
    same(sub.eta_bar_lg, eta_bar_low(p0), "eta_bar_low");
  }
  for (const auto& p : {set_a(0.0), set_b(0.0, 0.0), set_b(0.0, 0.5)}) {
    out.require(eta_bar_high(p) == 0.0 && eta_bar_low(p) == 0.0, "k = 0 thresholds not zero");
    const auto v = solve_integrated(p);
    out.require(v.q1v == v.q2v, "k = 0 integrated efforts differ");
  }
  if (out.pass) out.detail << "worst rel. gap at s = 1e-8: " << worst << "; k = 0 limits exact";
}

}  // namespace

int main() {
  run("AC1", "regime reproduction", ac1);
  run("AC2", "oracle equivalence", ac2);
  run("AC3", "openness trap", ac3);
  run("AC4", "welfare table cross-validation", ac4);
  run("AC5", "vertical integration", ac5);
  run("AC6", "subsidy regime shift", ac6);
  run("AC7", "limit consistency", ac7);
  std::printf("%s: %d of 7 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
