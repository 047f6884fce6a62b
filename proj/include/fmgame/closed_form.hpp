#pragma once

#include <optional>

#include "fmgame/params.hpp"
#include "fmgame/types.hpp"

// Closed-form best responses, the period-2 winning condition, openness and
// regime thresholds, and the equilibrium of the two-period game.
//
// Every function reads params.s: the per-unit subsidy lowers the deployer's
// net fee to w - s in both periods, which enters all formulas through the
// effective margin theta - w + s. With s = 0 this is the baseline game.

namespace fmgame {

// Relative tolerance for ties between scenario profits.
inline constexpr double kTieTolerance = 1e-9;

// Deployer's optimal effort and profit for one period.
struct DeployerOptimum {
  double effort = 0.0;
  double profit = 0.0;
};

// Incumbent's total two-period profit under each candidate scenario:
// S0 = (w_high, eta_cap), lose period 2; S1 = (w_high, eta_bar_high), win;
// S2 = (w_low, eta_bar_low), win.
struct ScenarioProfits {
  double pi_s0 = 0.0;
  double pi_s1 = 0.0;
  double pi_s2 = 0.0;

  double of(Regime regime) const noexcept;
};

struct RegimeThresholds {
  double k_bar_1 = 0.0;  // min(k_bar_13, k_bar_23)
  double k_bar_2 = 0.0;  // max(k_bar_12, k_bar_23)
  double k_bar_12 = 0.0;  // pi_s1 >= pi_s2 iff k <= k_bar_12
  double k_bar_13 = 0.0;  // pi_s1 >= pi_s0 iff k >= k_bar_13
  double k_bar_23 = 0.0;  // pi_s2 >= pi_s0 iff k >= k_bar_23
  // Openness cap separating the two threshold orderings; undefined when
  // w_high == w_low or theta == w_high + w_low.
  std::optional<double> eta_prime;
};

// Deployer's period-1 best response to (w1, eta1).
double q1_star(const ModelParams& params, const Strategy& strategy);

// Deployer's period-2 optimum when it stays with the incumbent, given
// period-1 engagement alpha1 and the incumbent's (w2, eta2).
DeployerOptimum period2_incumbent(const ModelParams& params, double alpha1, double w2, double eta2);

// Deployer's period-2 optimum when it switches to the entrant; the
// incumbent's period-1 openness eta1 spills over to the entrant.
DeployerOptimum period2_entrant(const ModelParams& params, double eta1, double eta2_tilde,
                                double w2_tilde);

// Left-hand side of the winning condition; the incumbent keeps the deployer
// iff this is <= 1.
double winning_ratio(const ModelParams& params, const Strategy& strategy);
bool incumbent_wins(const ModelParams& params, const Strategy& strategy);

// Largest eta1 at which the incumbent still wins, for w1 = w_high / w_low.
// Returned raw (not clamped to [0, eta_cap]). Throws DomainError when
// 2c - k(theta - w + s) <= 0.
double eta_bar_high(const ModelParams& params);
double eta_bar_low(const ModelParams& params);

ScenarioProfits scenario_profits(const ModelParams& params);
RegimeThresholds regime_thresholds(const ModelParams& params);

// Argmax over scenario profits. Ties within kTieTolerance go to S0, then S1.
Regime best_scenario(const ScenarioProfits& profits);

// First-period strategy of a scenario; eta1 clamped to [0, eta_cap].
Strategy scenario_strategy(const ModelParams& params, Regime regime);

// Full outcome when the incumbent plays the given scenario's strategy.
Equilibrium scenario_outcome(const ModelParams& params, Regime regime);

// Equilibrium of the game as parameterized (any admissible s). Regime is
// chosen from k against (k_bar_1, k_bar_2), ties to the lower-k regime, and
// cross-checked against the scenario-profit argmax.
Equilibrium solve_game(const ModelParams& params);

// Baseline game; requires s == 0.
Equilibrium solve_baseline(const ModelParams& params);

// Incumbent's two-period profit implied by an equilibrium's efforts.
double incumbent_profit(const Equilibrium& eq);

}  // namespace fmgame
