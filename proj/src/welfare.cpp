#include "fmgame/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fmgame/numeric.hpp"

namespace fmgame {

namespace {

constexpr int kTrapScanPoints = 2001;
constexpr double kRowRelTol = 1e-7;
constexpr double kRowAbsTol = 1e-12;

void require_baseline(const ModelParams& p) {
  if (p.s != 0.0) throw InvalidParams({"baseline game requires s = 0"});
}

void check_component(const char* name, Regime regime, double table, double rebuilt) {
  const double scale = std::max(std::abs(table), std::abs(rebuilt));
  if (std::abs(table - rebuilt) <= kRowRelTol * scale + kRowAbsTol) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "welfare table mismatch: " << name << " in " << to_string(regime) << " regime, table "
      << table << " vs rebuilt " << rebuilt;
  throw InternalError(msg.str());
}

double social_difference(const ModelParams& base, double k, double mandate_social) {
  ModelParams p = base;
  p.k = k;
  return welfare_baseline(p).social - mandate_social;
}

}  // namespace

WelfareBreakdown welfare_table(const ModelParams& p, Regime regime) {
  const double t = p.theta + p.s;
  const double c = p.c;
  const double e = p.eta_cap;
  const double wh = p.w_high;
  const double wl = p.w_low;
  const double k = p.k;
  const auto profits = scenario_profits(p);

  WelfareBreakdown w;
  w.dev1 = profits.of(regime);
  switch (regime) {
    case Regime::Harvest: {
      w.dev2 = (1.0 + e) * (1.0 + e) * (t - wl) * wl / (2.0 * c);
      w.deployer = (1.0 + e) *
                   ((2.0 + e) * t * t + wh * wh + (1.0 + e) * wl * wl -
                    2.0 * t * (wh + wl + e * wl)) /
                   (4.0 * c);
      w.consumer = (1.0 + e) * (1.0 + e) *
                   ((t - wh) * (t - wh) + (1.0 + e) * (1.0 + e) * (t - wl) * (t - wl)) /
                   (8.0 * c * c);
      break;
    }
    case Regime::Defend: {
      const double d = 2.0 * c - k * (t - wh);
      w.dev2 = 0.0;
      w.deployer = ((2.0 + e) * t * t + wh * wh + (1.0 + e) * wl * wl -
                    2.0 * t * (wh + wl + e * wl)) /
                   (4.0 * c - 2.0 * k * (t - wh));
      w.consumer = ((2.0 + e * (2.0 + e)) * t * t + wh * wh + (1.0 + e) * (1.0 + e) * wl * wl -
                    2.0 * t * (wh + (1.0 + e) * (1.0 + e) * wl)) /
                   (2.0 * d * d);
      break;
    }
    case Regime::Dominate: {
      const double d = 2.0 * c - k * (t - wl);
      w.dev2 = 0.0;
      w.deployer = (2.0 + e) * (t - wl) * (t - wl) / (4.0 * c - 2.0 * k * (t - wl));
      w.consumer = (2.0 + e * (2.0 + e)) * (t - wl) * (t - wl) / (2.0 * d * d);
      break;
    }
  }
  w.social = w.dev1 + w.dev2 + w.deployer + w.consumer;
  return w;
}

WelfareBreakdown welfare_rebuild(const ModelParams& p, const Equilibrium& eq) {
  const double q1 = eq.period1.engagement;
  const double q2 = eq.period2.engagement;
  const bool incumbent = eq.winner2 == Developer::Incumbent;
  const double w2 = incumbent ? eq.w2 : eq.w2_tilde;
  const double cost2 = incumbent ? (1.0 + p.k * q1) * (1.0 + eq.eta2)
                                 : (1.0 + eq.strategy.eta1) * (1.0 + eq.eta2_tilde);

  WelfareBreakdown w;
  w.dev1 = eq.strategy.w1 * q1 + (incumbent ? w2 * q2 : 0.0);
  w.dev2 = incumbent ? 0.0 : w2 * q2;
  w.deployer = (p.theta - eq.strategy.w1 + p.s) * q1 -
               p.c * q1 * q1 / (1.0 + eq.strategy.eta1) + (p.theta - w2 + p.s) * q2 -
               p.c * q2 * q2 / cost2;
  w.consumer = q1 * q1 / 2.0 + q2 * q2 / 2.0;
  w.social = w.dev1 + w.dev2 + w.deployer + w.consumer;
  return w;
}

WelfareBreakdown welfare_of(const ModelParams& p, const Equilibrium& eq) {
  const auto table = welfare_table(p, eq.regime);
  const auto rebuilt = welfare_rebuild(p, eq);
  check_component("dev1", eq.regime, table.dev1, rebuilt.dev1);
  check_component("dev2", eq.regime, table.dev2, rebuilt.dev2);
  check_component("deployer", eq.regime, table.deployer, rebuilt.deployer);
  check_component("consumer", eq.regime, table.consumer, rebuilt.consumer);
  return table;
}

WelfareBreakdown welfare_baseline(const ModelParams& p) {
  require_baseline(p);
  return welfare_of(p, solve_baseline(p));
}

Equilibrium mandate_outcome(const ModelParams& p) {
  require_valid(p);
  require_baseline(p);
  auto eq = scenario_outcome(p, Regime::Harvest);
  if (winning_ratio(p, eq.strategy) < 1.0 - kTieTolerance) {
    throw InternalError("mandated full openness still wins period 2 although k <= k_max");
  }
  return eq;
}

WelfareBreakdown welfare_mandate(const ModelParams& p) {
  return welfare_of(p, mandate_outcome(p));
}

TrapThreshold openness_trap_threshold(const ModelParams& params) {
  require_baseline(params);
  ModelParams p = params;
  p.k = 0.0;
  require_valid(p);

  const double kmax = k_max(p);
  const double lo = std::max(0.0, regime_thresholds(p).k_bar_1);
  TrapThreshold out;
  if (!(lo < kmax)) return out;

  const double mandate_social = welfare_mandate(p).social;
  std::vector<double> grid(kTrapScanPoints);
  std::vector<double> diff(kTrapScanPoints);
  for (int i = 0; i < kTrapScanPoints; ++i) {
    // The scan starts just above k_bar_1: the interval is open there.
    grid[i] = i == 0 ? std::nextafter(lo, kmax)
                     : lo + (kmax - lo) * static_cast<double>(i) / (kTrapScanPoints - 1);
    diff[i] = social_difference(p, grid[i], mandate_social);
  }

  int bracket = -1;
  for (int i = 0; i + 1 < kTrapScanPoints; ++i) {
    if (diff[i] < 0.0 && diff[i + 1] >= 0.0) bracket = i;
  }
  if (bracket < 0) return out;

  const double root = numeric::bisect(
      [&](double k) { return social_difference(p, k, mandate_social); }, grid[bracket],
      grid[bracket + 1]);
  out.found = true;
  out.k_bar = root;
  out.residual = social_difference(p, root, mandate_social);
  const double below = social_difference(p, std::nextafter(root, grid[bracket]), mandate_social);
  out.at_jump = below < 0.0 && out.residual - below > 1e-6 * std::max(1.0, std::abs(out.residual));
  return out;
}

}  // namespace fmgame
