#include "fmgame/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fmgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// theta + s: the subsidy raises every margin theta - w by s.
double effective_theta(const ModelParams& p) { return p.theta + p.s; }

double winning_threshold(const ModelParams& p, double fee) {
  const double margin = effective_theta(p) - fee;
  const double denom = 2.0 * p.c - p.k * margin;
  if (!(denom > 0.0)) {
    throw DomainError("openness threshold undefined: 2c - k(theta - w + s) <= 0");
  }
  return p.k * margin / denom;
}

// Incumbent's two-period profit when it wins period 2 at w_low after playing
// (w1, eta1): w1*Q1 + w_low*Q2 with Q2 boosted by the flywheel 1 + k*Q1.
double winning_profit(const ModelParams& p, double w1, double eta1) {
  const double t = effective_theta(p);
  const double c = p.c;
  const double period1 = 2.0 * c * (1.0 + eta1) * (t - w1) * w1;
  const double period2 =
      (1.0 + p.eta_cap) * (2.0 * c + p.k * (1.0 + eta1) * (t - w1)) * (t - p.w_low) * p.w_low;
  return (period1 + period2) / (4.0 * c * c);
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double ScenarioProfits::of(Regime regime) const noexcept {
  switch (regime) {
    case Regime::Harvest: return pi_s0;
    case Regime::Defend: return pi_s1;
    case Regime::Dominate: return pi_s2;
  }
  return pi_s0;
}

double q1_star(const ModelParams& p, const Strategy& st) {
  const double margin = p.theta - st.w1 + p.s;
  if (margin <= 0.0) return 0.0;
  return (1.0 + st.eta1) * margin / (2.0 * p.c);
}

DeployerOptimum period2_incumbent(const ModelParams& p, double alpha1, double w2, double eta2) {
  const double margin = std::max(0.0, p.theta - w2 + p.s);
  const double scale = (1.0 + p.k * alpha1) * (1.0 + eta2);
  return {scale * margin / (2.0 * p.c), scale * margin * margin / (4.0 * p.c)};
}

DeployerOptimum period2_entrant(const ModelParams& p, double eta1, double eta2_tilde,
                                double w2_tilde) {
  const double margin = std::max(0.0, p.theta - w2_tilde + p.s);
  const double scale = (1.0 + eta1) * (1.0 + eta2_tilde);
  return {scale * margin / (2.0 * p.c), scale * margin * margin / (4.0 * p.c)};
}

double winning_ratio(const ModelParams& p, const Strategy& st) {
  const double spill = 1.0 + st.eta1;
  return 2.0 * p.c * spill / (2.0 * p.c + p.k * spill * (p.theta - st.w1 + p.s));
}

bool incumbent_wins(const ModelParams& p, const Strategy& st) {
  return winning_ratio(p, st) <= 1.0;
}

double eta_bar_high(const ModelParams& p) { return winning_threshold(p, p.w_high); }
double eta_bar_low(const ModelParams& p) { return winning_threshold(p, p.w_low); }

ScenarioProfits scenario_profits(const ModelParams& p) {
  const double t = effective_theta(p);
  ScenarioProfits out;
  out.pi_s0 = (1.0 + p.eta_cap) * (t - p.w_high) * p.w_high / (2.0 * p.c);
  out.pi_s1 = winning_profit(p, p.w_high, eta_bar_high(p));
  out.pi_s2 = winning_profit(p, p.w_low, eta_bar_low(p));
  return out;
}

RegimeThresholds regime_thresholds(const ModelParams& p) {
  const double t = effective_theta(p);
  const double c = p.c;
  const double e = p.eta_cap;
  const double wh = p.w_high;
  const double wl = p.w_low;

  RegimeThresholds th;
  // Identical fees make S1 and S2 the same strategy; S1 wins every tie.
  th.k_bar_12 = (wh == wl) ? kInf
                           : 2.0 * c * (t - wl - wh) / ((t - wl) * (t - wh + wl + e * wl));
  if (wh == 0.0) {
    // All fees zero: every scenario earns nothing and S0 wins the tie.
    th.k_bar_13 = kInf;
    th.k_bar_23 = kInf;
  } else {
    th.k_bar_13 = 2.0 * c * (e * (t - wh) * wh - (1.0 + e) * t * wl + (1.0 + e) * wl * wl) /
                  ((1.0 + e) * (t - wh) * (t - wh) * wh);
    th.k_bar_23 = 2.0 * c * (1.0 / (t - wl) - (2.0 + e) * wl / ((1.0 + e) * (t - wh) * wh));
  }
  th.k_bar_1 = std::min(th.k_bar_13, th.k_bar_23);
  th.k_bar_2 = std::max(th.k_bar_12, th.k_bar_23);

  const double gap = wh - wl;
  const double base = t - wh - wl;
  if (gap != 0.0 && base != 0.0) {
    th.eta_prime = ((t - wh) * (t - wh) + wl * gap) / (base * gap);
  }
  return th;
}

Regime best_scenario(const ScenarioProfits& sp) {
  const double best = std::max({sp.pi_s0, sp.pi_s1, sp.pi_s2});
  if (nearly_equal(sp.pi_s0, best)) return Regime::Harvest;
  if (nearly_equal(sp.pi_s1, best)) return Regime::Defend;
  return Regime::Dominate;
}

Strategy scenario_strategy(const ModelParams& p, Regime regime) {
  switch (regime) {
    case Regime::Harvest:
      return {p.w_high, p.eta_cap};
    case Regime::Defend:
      return {p.w_high, std::clamp(eta_bar_high(p), 0.0, p.eta_cap)};
    case Regime::Dominate:
      return {p.w_low, std::clamp(eta_bar_low(p), 0.0, p.eta_cap)};
  }
  return {};
}

Equilibrium scenario_outcome(const ModelParams& p, Regime regime) {
  Equilibrium eq;
  eq.regime = regime;
  eq.strategy = scenario_strategy(p, regime);

  const double q1 = q1_star(p, eq.strategy);
  eq.period1 = {q1, q1, eq.strategy.w1 - p.s, eq.strategy.eta1};

  // Period 2: both developers fully open, entrant at the low fee, and the
  // incumbent cannot win at the high fee, so it matches at w_low.
  eq.w2 = p.w_low;
  eq.w2_tilde = p.w_low;
  eq.eta2 = p.eta_cap;
  eq.eta2_tilde = p.eta_cap;

  if (regime == Regime::Harvest) {
    const auto entrant = period2_entrant(p, eq.strategy.eta1, eq.eta2_tilde, eq.w2_tilde);
    eq.winner2 = Developer::Entrant;
    eq.period2 = {entrant.effort, entrant.effort, eq.w2_tilde - p.s, eq.eta2_tilde};
  } else {
    const auto incumbent = period2_incumbent(p, q1, eq.w2, eq.eta2);
    eq.winner2 = Developer::Incumbent;
    eq.period2 = {incumbent.effort, incumbent.effort, eq.w2 - p.s, eq.eta2};
  }
  return eq;
}

Equilibrium solve_game(const ModelParams& p) {
  require_valid(p);

  const auto th = regime_thresholds(p);
  Regime regime = Regime::Dominate;
  if (p.k <= th.k_bar_1) {
    regime = Regime::Harvest;
  } else if (p.k <= th.k_bar_2) {
    regime = Regime::Defend;
  }

  const auto profits = scenario_profits(p);
  const double best = std::max({profits.pi_s0, profits.pi_s1, profits.pi_s2});
  if (!nearly_equal(profits.of(regime), best)) {
    std::ostringstream msg;
    msg << "threshold regime " << to_string(regime) << " is not the scenario-profit argmax "
        << to_string(best_scenario(profits)) << " at k=" << p.k;
    throw InternalError(msg.str());
  }

  // k <= k_max keeps the low-fee threshold inside the openness cap.
  const double eta_low = eta_bar_low(p);
  if (eta_low > p.eta_cap * (1.0 + 1e-9) + 1e-12) {
    throw InternalError("eta_bar_low exceeds eta_cap although k <= k_max");
  }
  return scenario_outcome(p, regime);
}

Equilibrium solve_baseline(const ModelParams& p) {
  if (p.s != 0.0) {
    throw InvalidParams({"baseline game requires s = 0"});
  }
  return solve_game(p);
}

double incumbent_profit(const Equilibrium& eq) {
  const double p1 = eq.strategy.w1 * eq.period1.engagement;
  const double p2 = eq.winner2 == Developer::Incumbent ? eq.w2 * eq.period2.engagement : 0.0;
  return p1 + p2;
}

}  // namespace fmgame
