#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fmgame/types.hpp"

namespace fmgame {

enum class Scenario { Baseline, Mandate, Integration, Subsidy };

const char* to_string(Scenario scenario) noexcept;
// Throws ConfigError for an unknown name.
Scenario parse_scenario(const std::string& name);

struct SweepSpec {
  std::string parameter = "k";  // k or s
  double lo = 0.0;
  double hi = 0.0;
  int steps = 2;
  Scenario scenario = Scenario::Baseline;
};

// Throws ConfigError when lo >= hi, steps < 2 or the parameter is not k or s.
void validate(const SweepSpec& spec);

std::vector<std::string> sweep_header(Scenario scenario);

// 12 significant digits, the CSV number format.
std::string format_number(double value);

// One CSV row per grid point lo + i (hi - lo) / (steps - 1), header first.
// Points that violate the standing assumptions keep their k and s cells,
// carry "invalid: ..." in the status column and leave the rest empty.
// Rows are computed concurrently and written in grid order.
void write_sweep_csv(const ModelParams& params, const SweepSpec& spec, std::ostream& out,
                     int threads = 0);

}  // namespace fmgame
