#pragma once

#include "fmgame/params.hpp"
#include "fmgame/types.hpp"

// Brute-force solver for the two-period game. Best responses come from
// numeric maximization and strategies from exhaustive grid search, so the
// results can be compared with the closed forms without sharing any code.

namespace fmgame {

struct OracleConfig {
  int eta_grid_points = 10001;        // eta1 samples on [0, eta_cap]
  double effort_search = 1e-10;       // golden-section bracket tolerance
  int k_grid_points = 2001;           // density of k scans for threshold location
  int integrated_grid_points = 201;   // eta samples per period in the integrated problem
  int threads = 0;                    // 0: hardware concurrency
};

// Throws ConfigError when a field is out of range.
void validate(const OracleConfig& config);

// Maximizer over Q >= 0 of margin * Q - cost_scale * Q^2 / cost_denominator.
// Returns 0 when margin <= 0. Throws DomainError unless cost_scale and
// cost_denominator are positive.
double oracle_best_effort(double margin, double cost_scale, double cost_denominator,
                          double tol = 1e-10);

struct OracleEquilibrium {
  Equilibrium eq;
  double incumbent_profit = 0.0;
  int high_fee_period2_wins = 0;  // grid points where w2 = w_high keeps the deployer
  double eta_step = 0.0;          // eta1 grid spacing
};

// Exhaustive search over w1 in {w_high, w_low} and the eta1 grid, with the
// incumbent free to set either fee in period 2. The regime is read off the
// chosen strategy: losing period 2 is Harvest, winning at w_high is Defend,
// winning at w_low is Dominate.
OracleEquilibrium oracle_solve_game(const ModelParams& params, const OracleConfig& config = {});

// Backward induction for the merged incumbent and deployer. Openness is free
// on a grid in both periods; effort maximizes each period's own profit.
// Ignores fees and s.
IntegratedOutcome oracle_solve_integrated(const ModelParams& params,
                                          const OracleConfig& config = {});

}  // namespace fmgame
