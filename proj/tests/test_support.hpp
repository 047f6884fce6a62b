#pragma once

#include <algorithm>
#include <cmath>

#include "fmgame/types.hpp"

namespace fmtest {

inline fmgame::ModelParams set_a(double k = 0.2) {
  return {5.0, 1.0, 2.5, 0.5, 1.5, k, 0.0};
}

inline fmgame::ModelParams set_b(double k = 0.2, double s = 0.5) {
  return {5.0, 1.0, 2.5, 0.8, 1.5, k, s};
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace fmtest
