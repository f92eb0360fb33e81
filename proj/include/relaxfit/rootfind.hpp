#pragma once

#include <functional>

namespace relaxfit {

struct RootResult {
  double x;
  double f;
  int evaluations;
  bool converged;
};

// Bracketed scalar root finder: secant steps guarded by bisection, the
// bracket [lo, hi] must have f(lo)*f(hi) <= 0. Converges on relative
// x-width or |f| <= f_tol.
RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double f_lo, double f_hi,
                               double x_rel_tol, double f_tol,
                               int max_iterations = 200);

}  // namespace relaxfit
