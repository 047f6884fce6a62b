#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fmgame/oracle.hpp"
#include "fmgame/types.hpp"

namespace fmgame {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  double rel_tol = 1e-6;         // closed form vs rebuild / numeric best response
  double profit_rel_tol = 1e-5;  // closed form vs oracle incumbent profit
  double abs_tol = 1e-9;         // floor for comparisons near zero
  int k_grid = 200;              // k samples on [0, k_max] for sweeps and oracle runs
  int random_sets = 100;         // random parameter sets for the oracle comparison
  std::uint64_t seed = 20240611;
  OracleConfig oracle;
};

// Random admissible parameters: theta in [1, 10], c in [0.25, 4],
// w_high in [0.05, 0.5] theta, w_low in [0, 0.95] w_high, eta_cap in [0.1, 3],
// s in [0, w_low] when with_subsidy (else 0), k uniform on [0, k_max).
ModelParams random_params(std::mt19937_64& rng, bool with_subsidy);

// Runs the invariant and oracle-equivalence suite for the configured
// parameters. Subsidy checks are added when params.s > 0. Each result is
// passed to on_check as soon as it is known.
std::vector<CheckResult> run_verification(
    const ModelParams& params, const VerifyOptions& options = {},
    const std::function<void(const CheckResult&)>& on_check = {});

}  // namespace fmgame
