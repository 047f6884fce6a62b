#pragma once

#include "fmgame/closed_form.hpp"
#include "fmgame/types.hpp"

// Vertical integration of incumbent and deployer, and the per-unit adoption
// subsidy paid to the deployer.

namespace fmgame {

// Integrated optimum from the closed forms alone (fees and s play no role).
IntegratedOutcome integrated_closed_form(const ModelParams& params);

// Integrated optimum with profit and consumer surplus rebuilt from efforts
// and checked against the closed forms. Ignores params.s.
IntegratedOutcome solve_integrated(const ModelParams& params);

enum class CrossingKind {
  Root,              // single sign change; integration helps for k >= root
  AlwaysBeneficial,  // integrated >= decentralized on all of [0, k_max]
  NeverBeneficial,   // integrated < decentralized on all of [0, k_max]
  Irregular,         // several sign changes; k is the first upward crossing
};

const char* to_string(CrossingKind kind) noexcept;

struct Crossing {
  CrossingKind kind = CrossingKind::NeverBeneficial;
  double k = 0.0;
  double residual = 0.0;  // integrated - decentralized at k
  int sign_changes = 0;
  // The sign flips across a regime change rather than through zero; k then
  // lies within one double of the jump and residual is the jump's upper side.
  bool at_jump = false;
};

struct IntegrationThresholds {
  Crossing chain_profit;  // pi_v vs dev1 + deployer
  Crossing consumer;      // u_v vs consumer surplus
  Crossing social;        // pi_v + u_v vs social welfare
};

// Crossings over k in [0, k_max] against the baseline game (s treated as 0).
// Ignores params.k.
IntegrationThresholds integration_thresholds(const ModelParams& params);

struct SubsidizedEquilibrium {
  Equilibrium eq;
  double subsidy_spend = 0.0;  // s * (alpha1 + alpha2)
  double k_bar_1g = 0.0;
  double k_bar_2g = 0.0;
  double eta_bar_hg = 0.0;
  double eta_bar_lg = 0.0;
  WelfareBreakdown welfare;       // private components, subsidy not netted out
  double social_net_of_subsidy = 0.0;
};

// Game with 0 <= s <= w_low (s = 0 reproduces the baseline).
SubsidizedEquilibrium solve_subsidized(const ModelParams& params);

enum class PolicyInterval {
  HarvestBoth,      // k <= k_bar_1
  DefendToHarvest,  // k_bar_1 < k < k_bar_1g
  DelayedDominate,  // k_bar_2 < k < k_bar_2g
  Other,
};

const char* to_string(PolicyInterval interval) noexcept;

struct PolicyComparison {
  Equilibrium baseline;
  Equilibrium counterfactual;
  WelfareBreakdown baseline_welfare;
  WelfareBreakdown counterfactual_welfare;
  WelfareBreakdown delta;  // counterfactual - baseline
  double subsidy_spend = 0.0;
  PolicyInterval interval = PolicyInterval::Other;
};

// Baseline (s = 0) against the subsidized game at params.s > 0. Both games
// must be admissible at params.k.
PolicyComparison subsidy_comparison(const ModelParams& params);

// Baseline against the full-openness mandate (s must be 0). The interval is
// HarvestBoth when k <= k_bar_1 and Other otherwise.
PolicyComparison mandate_comparison(const ModelParams& params);

}  // namespace fmgame
