#pragma once

#include <cmath>
#include <utility>

namespace fmgame::numeric {

// Golden-section search for the maximizer of a unimodal f on [lo, hi].
// Stops once the bracket is narrower than tol or after max_iterations; near
// the optimum function comparisons lose resolution at roughly sqrt(eps).
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < max_iterations && (b - a) > tol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// Bisection for a sign change of f on [lo, hi]. Requires f(lo) and f(hi) to
// have opposite signs (zero counts as non-negative). Returns the bracket
// endpoint on the non-negative side once the bracket is no wider than tol or
// can no longer be split in double precision; tol = 0 means the latter.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 0.0) {
  bool lo_nonneg = f(lo) >= 0.0;
  for (int i = 0; i < 2000 && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) >= 0.0) == lo_nonneg) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo_nonneg ? lo : hi;
}

// Bisection on a boolean predicate that is true at lo and false at hi.
// Returns the last point known to satisfy the predicate.
template <class P>
double bisect_predicate(P&& pred, double lo, double hi, double tol = 0.0) {
  for (int i = 0; i < 2000 && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace fmgame::numeric
