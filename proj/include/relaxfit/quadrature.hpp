#pragma once

#include <functional>

namespace relaxfit {

struct QuadratureResult {
  double value;
  double error;  // estimated absolute error
  int panels;    // panels in the final partition
};

// Adaptive Gauss-Kronrod (7, 15) integration of f over [a, b]:
// worst-panel-first bisection until the summed error estimate drops below
// abs_tol. Throws quadrature_error carrying the achieved estimate when the
// panel budget is exhausted or the integrand produces non-finite values.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_panels = 4000);

}  // namespace relaxfit
