#pragma once

#include "fmgame/closed_form.hpp"
#include "fmgame/types.hpp"

// Welfare decomposition per regime, the full-openness mandate, and the
// flywheel strength at which the mandate starts to lower social welfare.

namespace fmgame {

// Closed-form welfare row for the outcome of the given scenario. Reads
// params.s; every subsidized row is the baseline row with theta -> theta + s.
WelfareBreakdown welfare_table(const ModelParams& params, Regime regime);

// Welfare recomputed directly from an outcome's efforts and fees:
// revenues minus fine-tuning costs, and alpha^2 / 2 consumer surplus per period.
WelfareBreakdown welfare_rebuild(const ModelParams& params, const Equilibrium& eq);

// Table row for eq.regime, checked component by component against the
// rebuild. Throws InternalError naming the component and regime on mismatch.
WelfareBreakdown welfare_of(const ModelParams& params, const Equilibrium& eq);

// Equilibrium welfare of the baseline game (s must be 0).
WelfareBreakdown welfare_baseline(const ModelParams& params);

// Outcome when the incumbent is forced to eta1 = eta_cap. The incumbent then
// cannot win period 2 and harvests at the high fee for every k.
Equilibrium mandate_outcome(const ModelParams& params);
WelfareBreakdown welfare_mandate(const ModelParams& params);

struct TrapThreshold {
  bool found = false;     // false: no sign change on (k_bar_1, k_max]
  double k_bar = 0.0;
  double residual = 0.0;  // baseline SW - mandate SW at k_bar
  // The crossing is a jump at a regime change; k_bar is within one double of it.
  bool at_jump = false;
};

// Crossing of baseline and mandate social welfare on (k_bar_1, k_max]. Scans
// the interval and bisects the last bracket where the baseline moves from
// below to at-or-above the mandate. Ignores params.k.
TrapThreshold openness_trap_threshold(const ModelParams& params);

}  // namespace fmgame
