#pragma once

#include <complex>
#include <vector>

#include "relaxfit/continuum.hpp"
#include "relaxfit/core.hpp"
#include "relaxfit/discrete.hpp"

namespace relaxfit {

// k = omega sqrt(rho0) sqrt(kappa), principal square root. For the lossy
// models produced here (Im kappa <= 0, Re kappa > 0) this gives Re k >= 0
// and Im k <= 0. Rejects kappa on the closed negative real axis.
std::complex<double> wavenumber(ComplexCompressibility kappa, const Medium& medium,
                                double omega);

struct DispersionCurve {
  FrequencyGrid grid;
  std::vector<double> attenuation;     // alpha_k = -Im k, Np/m
  std::vector<double> phase_velocity;  // c_p = omega / Re k, m/s
};

// Serial reference implementation.
DispersionCurve eval_dispersion_serial(const KappaFn& kappa, const Medium& medium,
                                       const FrequencyGrid& grid);

// OpenMP kernel: samples are independent, assembly order is fixed by index,
// so the result is bit-identical to the serial reference for any thread
// count. Falls back to the serial loop when built without OpenMP.
DispersionCurve eval_dispersion(const KappaFn& kappa, const Medium& medium,
                                const FrequencyGrid& grid);

// alpha_ref * (omega/omega_ref)^eta.
double target_attenuation(const PowerLawTarget& target, double omega);

// Small-attenuation approximation A w^2 Sum/Int W kappa_nu/(W^2+w^2),
// A = sqrt(rho0/kappa0)/2. Additive across mechanisms.
double small_attenuation_attenuation(const RelaxationSet& set, const Medium& medium,
                                     double omega);
double small_attenuation_attenuation(const ContinuousDistribution& dist,
                                     const Medium& medium, double omega,
                                     double rel_tol = 1e-9);

struct FitReport {
  double max_rel_diff;          // max |per_sample_rel_diff|
  double normalization_scale;   // s = 2/(max g + min g), g = alpha/target
  std::vector<double> per_sample_rel_diff;  // in-band samples, grid order
  double band_lo;
  double band_hi;
};

// Rescales the curve so the extreme relative differences against the target
// law are equal in magnitude over the band, and reports them.
FitReport normalize_to_target(const DispersionCurve& curve,
                              const PowerLawTarget& target, double band_lo,
                              double band_hi);

// max |alpha/target - 1| over the band, no rescaling.
double max_rel_diff_unnormalized(const DispersionCurve& curve,
                                 const PowerLawTarget& target, double band_lo,
                                 double band_hi);

// Least-squares slope of ln(alpha) against ln(omega) over the in-band
// samples (endpoints inclusive).
double loglog_slope(const DispersionCurve& curve, double band_lo, double band_hi);

}  // namespace relaxfit
