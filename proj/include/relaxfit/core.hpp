#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace relaxfit {

// Frequency-domain generalized compressibility kappa(omega), Pa^-1.
// Lossy models produced here have Im <= 0.
using ComplexCompressibility = std::complex<double>;

// Model evaluator handed to the dispersion pipeline.
using KappaFn = std::function<ComplexCompressibility(double omega)>;

inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double db_per_np = 8.685889638065035;  // 20*log10(e)

double hz_to_angular(double f_hz);
double angular_to_hz(double omega);
double db_per_cm_to_np_per_m(double a_db_per_cm);
double np_per_m_to_db_per_cm(double a_np_per_m);

// Equilibrium medium constants. The three fields are redundant by
// kappa0 = 1/(c0^2 rho0); construction enforces consistency to 1e-12.
class Medium {
public:
  Medium(double c0, double rho0, double kappa0);
  static Medium from_speed_density(double c0, double rho0);

  double c0() const { return c0_; }
  double rho0() const { return rho0_; }
  double kappa0() const { return kappa0_; }

private:
  double c0_;
  double rho0_;
  double kappa0_;
};

// Desired attenuation law alpha_ref*(omega/omega_ref)^eta, anchored inside
// the relaxation placement band [omega_lo, omega_hi]. Angular units.
class PowerLawTarget {
public:
  PowerLawTarget(double eta, double alpha_ref, double omega_ref,
                 double omega_lo, double omega_hi);

  double eta() const { return eta_; }
  double alpha_ref() const { return alpha_ref_; }
  double omega_ref() const { return omega_ref_; }
  double omega_lo() const { return omega_lo_; }
  double omega_hi() const { return omega_hi_; }

private:
  double eta_;
  double alpha_ref_;
  double omega_ref_;
  double omega_lo_;
  double omega_hi_;
};

// Strictly increasing positive angular frequencies.
class FrequencyGrid {
public:
  explicit FrequencyGrid(std::vector<double> samples);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double front() const { return samples_.front(); }
  double back() const { return samples_.back(); }

private:
  std::vector<double> samples_;
};

// n_points geometrically spaced samples, endpoints exactly omega_lo/omega_hi.
FrequencyGrid make_log_grid(double omega_lo, double omega_hi, std::size_t n_points);

}  // namespace relaxfit
