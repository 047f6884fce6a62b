#pragma once

#include <string>
#include <vector>

#include "fmgame/errors.hpp"
#include "fmgame/types.hpp"

namespace fmgame {

// Relative slack applied to the weak inequalities k <= k_max and
// w_high <= theta/2 so that values printed and re-read still sit on the bound.
inline constexpr double kBoundSlack = 1e-12;

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(const std::string& name) const;
};

// Checks every standing assumption and names each violated one. Never throws.
ValidationReport validate(const ModelParams& params);

// Upper bound on the flywheel strength under which the incumbent cannot win
// period 2 at the high fee. Uses params.s (zero gives the baseline bound).
// Throws DomainError when theta - w_high + s <= 0.
double k_max(const ModelParams& params);

// Throws InvalidParams listing every violation.
void require_valid(const ModelParams& params);

}  // namespace fmgame
