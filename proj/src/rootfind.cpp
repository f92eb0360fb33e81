#include "relaxfit/rootfind.hpp"

#include <cmath>

#include "relaxfit/errors.hpp"

namespace relaxfit {

RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double f_lo, double f_hi,
                               double x_rel_tol, double f_tol,
                               int max_iterations) {
  if (!(lo <= hi)) throw calibration_error("find_root_bracketed: lo > hi");
  if (f_lo == 0.0) return RootResult{lo, 0.0, 0, true};
  if (f_hi == 0.0) return RootResult{hi, 0.0, 0, true};
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw calibration_error("find_root_bracketed: root not bracketed");

  int evals = 0;
  double x = hi, fx = f_hi;
  for (int it = 0; it < max_iterations; ++it) {
    // Secant candidate; fall back to bisection when it leaves the bracket
    // or makes no progress.
    double cand = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    const double mid = 0.5 * (lo + hi);
    if (!std::isfinite(cand) || cand <= lo || cand >= hi) cand = mid;

    x = cand;
    fx = f(x);
    ++evals;
    if (fx == 0.0) return RootResult{x, fx, evals, true};

    if ((fx > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }

    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (std::abs(fx) <= f_tol || width <= x_rel_tol * scale)
      return RootResult{x, fx, evals, true};

    // Stagnating secant: force a bisection step every other iteration.
    if (it % 2 == 1) {
      const double bx = 0.5 * (lo + hi);
      if (bx > lo && bx < hi) {
        const double fb = f(bx);
        ++evals;
        if (fb == 0.0) return RootResult{bx, fb, evals, true};
        if ((fb > 0.0) == (f_lo > 0.0)) {
          lo = bx;
          f_lo = fb;
        } else {
          hi = bx;
          f_hi = fb;
        }
      }
    }
  }
  return RootResult{x, fx, evals, false};
}

}  // namespace relaxfit
