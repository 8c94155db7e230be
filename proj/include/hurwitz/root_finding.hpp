#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace hurwitz {

/// Safeguarded Newton iteration on a bracket [lo, hi] whose endpoint values
/// have opposite signs (or one is zero). `eval(x)` returns {f(x), f'(x)}.
/// A Newton step that leaves the bracket or fails to halve the residual is
/// replaced by bisection, so the iteration always converges.
template <typename Eval>
double solve_bracketed(Eval&& eval, double lo, double hi, double f_lo,
                       double tol_f, int max_iter = 200) {
  if (f_lo == 0.0) return lo;
  double x = 0.5 * (lo + hi);
  double prev_abs = INFINITY;
  for (int iter = 0; iter < max_iter; ++iter) {
    const auto [f, df] = eval(x);
    if (std::abs(f) <= tol_f) return x;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    double next = (df != 0.0) ? x - f / df : lo - 1.0;
    const bool inside = next > std::min(lo, hi) && next < std::max(lo, hi);
    if (!inside || std::abs(f) > 0.5 * prev_abs) next = 0.5 * (lo + hi);
    prev_abs = std::abs(f);
    if (next == x || std::abs(hi - lo) <= 4.0 * 2.2e-16 * std::abs(x)) {
      return x;
    }
    x = next;
  }
  return x;
}

}  // namespace hurwitz
