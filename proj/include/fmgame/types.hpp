#pragma once

// Value types shared by the analytic solvers and the brute-force oracle.

namespace fmgame {

// Exogenous symbols of the two-period game. All quantities are abstract reals.
struct ModelParams {
  double theta = 0.0;    // engagement-to-revenue conversion rate
  double c = 0.0;        // fine-tuning cost scalar
  double w_high = 0.0;   // high per-unit license fee
  double w_low = 0.0;    // low per-unit license fee
  double eta_cap = 0.0;  // maximum openness
  double k = 0.0;        // data-flywheel strength
  double s = 0.0;        // per-unit adoption subsidy, zero in the baseline game
};

enum class Regime { Harvest, Defend, Dominate };

enum class Developer { Incumbent, Entrant };

const char* to_string(Regime regime) noexcept;
const char* to_string(Developer developer) noexcept;

// Incumbent's first-period action.
struct Strategy {
  double w1 = 0.0;
  double eta1 = 0.0;
};

struct PeriodOutcome {
  double effort = 0.0;
  double engagement = 0.0;  // equals effort under quadratic utility
  double fee_paid = 0.0;    // per-unit fee net of subsidy
  double openness = 0.0;    // openness governing the deployer's cost
};

struct Equilibrium {
  Regime regime = Regime::Harvest;
  Strategy strategy;
  PeriodOutcome period1;
  PeriodOutcome period2;
  Developer winner2 = Developer::Entrant;
  double w2 = 0.0;
  double w2_tilde = 0.0;
  double eta2 = 0.0;
  double eta2_tilde = 0.0;
};

struct WelfareBreakdown {
  double dev1 = 0.0;      // incumbent two-period profit
  double dev2 = 0.0;      // entrant profit
  double deployer = 0.0;  // deployer two-period profit
  double consumer = 0.0;  // two-period consumer surplus
  double social = 0.0;    // sum of the four
};

// Incumbent and deployer merged; entrant foreclosed.
struct IntegratedOutcome {
  double eta1v = 0.0;
  double eta2v = 0.0;
  double q1v = 0.0;
  double q2v = 0.0;
  double profit = 0.0;
  double consumer = 0.0;
  double social = 0.0;
};

}  // namespace fmgame
