#include "fmgame/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "fmgame/numeric.hpp"
#include "fmgame/welfare.hpp"

namespace fmgame {

namespace {

constexpr int kCrossingScanPoints = 2001;
constexpr double kRelTol = 1e-9;

void check_close(const char* what, double closed, double rebuilt) {
  const double scale = std::max({1.0, std::abs(closed), std::abs(rebuilt)});
  if (std::abs(closed - rebuilt) <= kRelTol * scale) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "integrated " << what << " mismatch: closed form " << closed << " vs rebuilt " << rebuilt;
  throw InternalError(msg.str());
}

WelfareBreakdown difference(const WelfareBreakdown& a, const WelfareBreakdown& b) {
  return {a.dev1 - b.dev1, a.dev2 - b.dev2, a.deployer - b.deployer, a.consumer - b.consumer,
          a.social - b.social};
}

Crossing locate_crossing(const std::function<double(double)>& f, double kmax) {
  std::vector<double> grid(kCrossingScanPoints);
  std::vector<double> value(kCrossingScanPoints);
  for (int i = 0; i < kCrossingScanPoints; ++i) {
    grid[i] = kmax * static_cast<double>(i) / (kCrossingScanPoints - 1);
    value[i] = f(grid[i]);
  }

  Crossing out;
  int first_up = -1;
  for (int i = 0; i + 1 < kCrossingScanPoints; ++i) {
    if ((value[i] >= 0.0) != (value[i + 1] >= 0.0)) {
      ++out.sign_changes;
      if (first_up < 0 && value[i] < 0.0) first_up = i;
    }
  }

  if (out.sign_changes == 0) {
    out.kind = value[0] >= 0.0 ? CrossingKind::AlwaysBeneficial : CrossingKind::NeverBeneficial;
    out.k = value[0] >= 0.0 ? 0.0 : kmax;
    out.residual = f(out.k);
    return out;
  }
  if (first_up < 0) {
    // Only downward crossings: integration helps at low k and hurts above.
    out.kind = CrossingKind::Irregular;
    out.k = kmax;
    out.residual = value.back();
    return out;
  }
  out.kind = out.sign_changes == 1 ? CrossingKind::Root : CrossingKind::Irregular;
  out.k = numeric::bisect(f, grid[first_up], grid[first_up + 1]);
  out.residual = f(out.k);
  const double below = f(std::nextafter(out.k, grid[first_up]));
  out.at_jump = below < 0.0 && out.residual - below > 1e-6 * std::max(1.0, std::abs(out.residual));
  return out;
}

}  // namespace

const char* to_string(CrossingKind kind) noexcept {
  switch (kind) {
    case CrossingKind::Root: return "root";
    case CrossingKind::AlwaysBeneficial: return "always";
    case CrossingKind::NeverBeneficial: return "never";
    case CrossingKind::Irregular: return "irregular";
  }
  return "?";
}

const char* to_string(PolicyInterval interval) noexcept {
  switch (interval) {
    case PolicyInterval::HarvestBoth: return "harvest_both";
    case PolicyInterval::DefendToHarvest: return "defend_to_harvest";
    case PolicyInterval::DelayedDominate: return "delayed_dominate";
    case PolicyInterval::Other: return "other";
  }
  return "?";
}

IntegratedOutcome integrated_closed_form(const ModelParams& p) {
  const double th = p.theta;
  const double c = p.c;
  const double e = p.eta_cap;
  const double k = p.k;

  IntegratedOutcome out;
  out.eta1v = e;
  out.eta2v = e;
  out.q1v = (1.0 + e) * th / (2.0 * c);
  out.q2v = (1.0 + e) * (2.0 * c + k * th * (1.0 + e)) * th / (4.0 * c * c);
  out.profit = (1.0 + e) * (4.0 * c + (1.0 + e) * k * th) * th * th / (8.0 * c * c);
  const double boost = 1.0 + (1.0 + e) * k * th / (2.0 * c);
  out.consumer = (1.0 + e) * (1.0 + e) * th * th * (1.0 + boost * boost) / (8.0 * c * c);
  out.social = out.profit + out.consumer;
  return out;
}

IntegratedOutcome solve_integrated(const ModelParams& params) {
  require_valid(params);
  const auto out = integrated_closed_form(params);

  const double th = params.theta;
  const double c = params.c;
  const double e = out.eta1v;
  const double q1 = out.q1v;
  const double q2 = out.q2v;
  const double profit = th * q1 - c * q1 * q1 / (1.0 + e) + th * q2 -
                        c * q2 * q2 / ((1.0 + params.k * q1) * (1.0 + out.eta2v));
  const double consumer = (q1 * q1 + q2 * q2) / 2.0;
  check_close("profit", out.profit, profit);
  check_close("consumer surplus", out.consumer, consumer);
  return out;
}

IntegrationThresholds integration_thresholds(const ModelParams& params) {
  ModelParams p = params;
  p.s = 0.0;
  p.k = 0.0;
  require_valid(p);
  const double kmax = k_max(p);

  auto at = [&](double k) {
    ModelParams q = p;
    q.k = k;
    return q;
  };

  IntegrationThresholds out;
  out.chain_profit = locate_crossing(
      [&](double k) {
        const auto q = at(k);
        const auto w = welfare_baseline(q);
        return integrated_closed_form(q).profit - (w.dev1 + w.deployer);
      },
      kmax);
  out.consumer = locate_crossing(
      [&](double k) {
        const auto q = at(k);
        return integrated_closed_form(q).consumer - welfare_baseline(q).consumer;
      },
      kmax);
  out.social = locate_crossing(
      [&](double k) {
        const auto q = at(k);
        return integrated_closed_form(q).social - welfare_baseline(q).social;
      },
      kmax);
  return out;
}

SubsidizedEquilibrium solve_subsidized(const ModelParams& p) {
  require_valid(p);
  SubsidizedEquilibrium out;
  out.eq = solve_game(p);
  const auto th = regime_thresholds(p);
  out.k_bar_1g = th.k_bar_1;
  out.k_bar_2g = th.k_bar_2;
  out.eta_bar_hg = eta_bar_high(p);
  out.eta_bar_lg = eta_bar_low(p);
  out.welfare = welfare_of(p, out.eq);
  out.subsidy_spend = p.s * (out.eq.period1.engagement + out.eq.period2.engagement);
  out.social_net_of_subsidy = out.welfare.social - out.subsidy_spend;
  return out;
}

PolicyComparison subsidy_comparison(const ModelParams& p) {
  if (!(p.s > 0.0)) throw InvalidParams({"subsidy comparison requires s > 0"});
  ModelParams base = p;
  base.s = 0.0;
  require_valid(base);

  const auto sub = solve_subsidized(p);
  PolicyComparison out;
  out.baseline = solve_baseline(base);
  out.baseline_welfare = welfare_of(base, out.baseline);
  out.counterfactual = sub.eq;
  out.counterfactual_welfare = sub.welfare;
  out.delta = difference(out.counterfactual_welfare, out.baseline_welfare);
  out.subsidy_spend = sub.subsidy_spend;

  const auto th = regime_thresholds(base);
  if (p.k <= th.k_bar_1) {
    out.interval = PolicyInterval::HarvestBoth;
  } else if (p.k < sub.k_bar_1g) {
    out.interval = PolicyInterval::DefendToHarvest;
  } else if (p.k > th.k_bar_2 && p.k < sub.k_bar_2g) {
    out.interval = PolicyInterval::DelayedDominate;
  }
  return out;
}

PolicyComparison mandate_comparison(const ModelParams& p) {
  PolicyComparison out;
  out.baseline = solve_baseline(p);
  out.baseline_welfare = welfare_of(p, out.baseline);
  out.counterfactual = mandate_outcome(p);
  out.counterfactual_welfare = welfare_of(p, out.counterfactual);
  out.delta = difference(out.counterfactual_welfare, out.baseline_welfare);
  out.interval = p.k <= regime_thresholds(p).k_bar_1 ? PolicyInterval::HarvestBoth
                                                       : PolicyInterval::Other;
  return out;
}

}  // namespace fmgame
