#include "relaxfit/core.hpp"

#include <cmath>
#include <string>

#include "relaxfit/errors.hpp"

namespace relaxfit {

double hz_to_angular(double f_hz) {
  if (f_hz < 0.0) throw config_error("hz_to_angular: negative frequency");
  return two_pi * f_hz;
}

double angular_to_hz(double omega) {
  if (omega < 0.0) throw config_error("angular_to_hz: negative frequency");
  return omega / two_pi;
}

double db_per_cm_to_np_per_m(double a_db_per_cm) {
  if (a_db_per_cm < 0.0) throw config_error("db_per_cm_to_np_per_m: negative attenuation");
  return a_db_per_cm * 100.0 / db_per_np;
}

double np_per_m_to_db_per_cm(double a_np_per_m) {
  if (a_np_per_m < 0.0) throw config_error("np_per_m_to_db_per_cm: negative attenuation");
  return a_np_per_m * db_per_np / 100.0;
}

Medium::Medium(double c0, double rho0, double kappa0)
    : c0_(c0), rho0_(rho0), kappa0_(kappa0) {
  if (!(c0 > 0.0) || !(rho0 > 0.0) || !(kappa0 > 0.0))
    throw config_error("Medium: c0, rho0, kappa0 must all be positive");
  const double derived = 1.0 / (c0 * c0 * rho0);
  if (std::abs(kappa0 - derived) > 1e-12 * derived)
    throw config_error("Medium: kappa0 inconsistent with 1/(c0^2 rho0)");
}

Medium Medium::from_speed_density(double c0, double rho0) {
  if (!(c0 > 0.0) || !(rho0 > 0.0))
    throw config_error("Medium: c0 and rho0 must be positive");
  return Medium(c0, rho0, 1.0 / (c0 * c0 * rho0));
}

PowerLawTarget::PowerLawTarget(double eta, double alpha_ref, double omega_ref,
                               double omega_lo, double omega_hi)
    : eta_(eta),
      alpha_ref_(alpha_ref),
      omega_ref_(omega_ref),
      omega_lo_(omega_lo),
      omega_hi_(omega_hi) {
  if (!(eta >= 0.0) || !(eta <= 2.0))
    throw config_error("PowerLawTarget: eta must lie in [0, 2]");
  if (!(omega_lo > 0.0) || !(omega_lo < omega_hi))
    throw config_error("PowerLawTarget: need 0 < omega_lo < omega_hi");
  if (!(omega_ref >= omega_lo) || !(omega_ref <= omega_hi))
    throw config_error("PowerLawTarget: omega_ref must lie inside the band");
  if (!(alpha_ref > 0.0))
    throw config_error("PowerLawTarget: alpha_ref must be positive");
}

FrequencyGrid::FrequencyGrid(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw config_error("FrequencyGrid: empty");
  double prev = 0.0;
  for (double w : samples_) {
    if (!(w > prev))
      throw config_error("FrequencyGrid: samples must be positive and strictly increasing");
    prev = w;
  }
}

FrequencyGrid make_log_grid(double omega_lo, double omega_hi, std::size_t n_points) {
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo))
    throw config_error("make_log_grid: need 0 < omega_lo < omega_hi");
  if (n_points < 2) throw config_error("make_log_grid: need at least 2 points");

  const double llo = std::log(omega_lo);
  const double lhi = std::log(omega_hi);
  std::vector<double> samples(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
    samples[i] = std::exp(llo + t * (lhi - llo));
  }
  samples.front() = omega_lo;
  samples.back() = omega_hi;
  return FrequencyGrid(std::move(samples));
}

}  // namespace relaxfit
