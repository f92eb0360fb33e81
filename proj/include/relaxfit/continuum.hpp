#pragma once

#include <limits>

#include "relaxfit/core.hpp"
#include "relaxfit/zener.hpp"

namespace relaxfit {

// Relaxation-frequency band [omega_lo, omega_hi]; omega_lo may be 0 and
// omega_hi infinite (fully populated axis). omega_lo == omega_hi is the
// empty band.
struct Band {
  double omega_lo;
  double omega_hi;

  static Band full() {
    return Band{0.0, std::numeric_limits<double>::infinity()};
  }
  bool empty() const { return omega_lo == omega_hi; }
};

// Density of the Mittag-Leffler related distribution of relaxation
// compressibility contributions that reproduces the alpha = beta fractional
// Zener compressibility when populating the whole frequency axis:
//
//   kappa'(W) = kappa0 (ts^a - te^a) W^(a-1) sin(a pi)
//               / (pi ((ts W)^(2a) + 2 (ts W)^a cos(a pi) + 1))
//
// Requires 0 < alpha < 1 (alpha = 1 makes the density vanish identically)
// and Omega > 0 (the low-regime power law diverges at 0).
double kappa_prime(const ZenerParams& p, double Omega);

// Amplitudes of the three power-law regimes of kappa_prime:
// c_low * W^(a-1) for W ts << 1, c_mid / W near W ts = 1,
// c_high * W^(-a-1) for W ts >> 1.
struct RegimeConstants {
  double c_low;
  double c_mid;
  double c_high;
};
RegimeConstants regime_constants(const ZenerParams& p);

// A continuous relaxation distribution restricted to a band: either the
// exact Zener density kappa_prime (optionally rescaled) or a pure power
// law C * Omega^d with -2 < d <= 0. Power-law bands must be finite.
class ContinuousDistribution {
public:
  enum class Kind { zener_exact, power_law };

  static ContinuousDistribution zener(const ZenerParams& p, Band band,
                                      double scale = 1.0);
  static ContinuousDistribution power_law(double kappa0, double amplitude,
                                          double exponent, Band band);

  Kind kind() const { return kind_; }
  const Band& band() const { return band_; }
  double kappa0() const { return kappa0_; }
  double scale() const { return scale_; }
  const ZenerParams& zener_params() const;
  double amplitude() const { return amplitude_; }
  double exponent() const { return exponent_; }

  // kappa_nu(Omega): the banded density (zero outside the band).
  double density(double Omega) const;

private:
  ContinuousDistribution(Kind kind, Band band, double kappa0);

  Kind kind_;
  Band band_;
  double kappa0_;
  double scale_ = 1.0;
  ZenerParams params_ = ZenerParams(0.5, 0.5, 1.0, 0.0, 1.0);  // zener kind only
  double amplitude_ = 0.0;  // power-law kind only
  double exponent_ = 0.0;
};

// kappa_N(omega) = kappa0 - w^2 Int kappa_nu/(W^2+w^2) dW
//                         - i w Int W kappa_nu/(W^2+w^2) dW
// over the distribution's band, each integral converged by adaptive
// quadrature to rel_tol * kappa0 in absolute kappa units. omega = 0 and the
// empty band return kappa0 exactly. Throws quadrature_error on
// non-convergence, carrying the achieved estimate.
ComplexCompressibility continuum_compressibility(const ContinuousDistribution& dist,
                                                 double omega,
                                                 double rel_tol = 1e-9,
                                                 int max_panels = 4000);

KappaFn kappa_fn(const ContinuousDistribution& dist, double rel_tol = 1e-9);

// |kappa_band(omega) - kappa_full(omega)| / |kappa_full(omega)| for the
// Zener density. Small when omega sits deep inside a wide band, order one
// at the band edges.
double bandlimited_equivalence_gap(const ZenerParams& p, Band band, double omega,
                                   double rel_tol = 1e-9);

// Fitted log-log attenuation slopes far outside the populated band:
// 2 below (below_grid entirely under omega_lo/50) and 0 above (above_grid
// entirely over 50*omega_hi). Grids overlapping those margins are rejected.
struct BandAsymptoteSlopes {
  double low_slope;
  double high_slope;
};
BandAsymptoteSlopes asymptotic_band_attenuation_check(
    const ContinuousDistribution& dist, const Medium& medium,
    const FrequencyGrid& below_grid, const FrequencyGrid& above_grid);

}  // namespace relaxfit
