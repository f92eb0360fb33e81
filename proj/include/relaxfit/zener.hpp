#pragma once

#include "relaxfit/core.hpp"

namespace relaxfit {

// Fractional Zener constitutive parameters.
// Thermodynamic admissibility: 0 < alpha <= 1, 0 <= beta <= alpha,
// tau_sigma > tau_epsilon >= 0. tau_epsilon = 0 is the degenerate
// maximal-loss state used as the pre-calibration amplitude.
class ZenerParams {
public:
  ZenerParams(double alpha, double beta, double tau_sigma, double tau_epsilon,
              double kappa0);
  // alpha = beta, the variant the distribution theory is derived for.
  static ZenerParams symmetric(double alpha, double tau_sigma,
                               double tau_epsilon, double kappa0);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double tau_sigma() const { return tau_sigma_; }
  double tau_epsilon() const { return tau_epsilon_; }
  double kappa0() const { return kappa0_; }

private:
  double alpha_;
  double beta_;
  double tau_sigma_;
  double tau_epsilon_;
  double kappa0_;
};

// kappa0 * (1 + (i w tau_eps)^beta) / (1 + (i w tau_sig)^alpha),
// principal branch: (i w tau)^a = (w tau)^a * exp(i a pi/2) for w >= 0.
ComplexCompressibility zener_compressibility(const ZenerParams& p, double omega);

KappaFn kappa_fn(const ZenerParams& p);

// The three attenuation power-law exponents of the alpha = beta model:
// omega^(1+a) below 1/tau_sigma, omega^(1-a/2) between the knees,
// omega^(1-a) above 1/tau_epsilon.
struct RegimeExponents {
  double low;
  double mid;
  double high;
};
RegimeExponents zener_regime_exponents(double alpha);

enum class Regime { low, high, unity };

// Which distribution regime hosts a wanted attenuation exponent, and where
// the Zener knee 1/tau_sigma must sit relative to the band.
struct RegimeSelection {
  Regime regime;
  double alpha;  // implied fractional order; 0 for Regime::unity

  // low: 1/tau_sigma at margin*omega_hi; high: at omega_lo/margin.
  // Regime::unity bypasses the Zener distribution entirely (d = -1 rule).
  double tau_sigma_for_band(double omega_lo, double omega_hi, double margin) const;
};
RegimeSelection regime_for_target(double eta);

}  // namespace relaxfit
