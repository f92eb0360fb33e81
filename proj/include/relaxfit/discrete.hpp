#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relaxfit/core.hpp"
#include "relaxfit/zener.hpp"

namespace relaxfit {

// One discrete relaxation process. weight = density * step is the effective
// compressibility contribution entering the compressibility sum; density and
// step are kept separately so the quadrature reading of the sum stays
// auditable. Impulse mechanisms (eta 0 or 2 targets) carry step = 1.
struct RelaxationMechanism {
  double omega_nu;  // relaxation frequency, rad/s
  double density;   // sampled distribution density, Pa^-1 s
  double step;      // log-grid stepsize delta Omega, rad/s
  double weight;    // density * step, Pa^-1
};

enum class DensityMode { zener_exact, power_law };

// What produced a set: the target, the sampling mode, and the calibration
// state. tau_epsilon_realized is absent when the calibrated scale exceeds
// the Zener-representable range (s > 1); the weights remain valid.
struct Provenance {
  PowerLawTarget target;
  DensityMode mode;
  double tau_sigma_margin;
  std::optional<ZenerParams> zener;  // pre-calibration density parameters
  double calibration_scale = 1.0;
  std::optional<double> tau_epsilon_realized;
};

// N discrete mechanisms plus the zero-frequency compressibility. Mechanisms
// are sorted by ascending relaxation frequency; the summed weights must stay
// below kappa0 so the high-frequency compressibility remains positive.
class RelaxationSet {
public:
  RelaxationSet(std::vector<RelaxationMechanism> mechanisms, double kappa0,
                std::optional<Provenance> provenance = std::nullopt);

  const std::vector<RelaxationMechanism>& mechanisms() const { return mechanisms_; }
  double kappa0() const { return kappa0_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }
  std::size_t size() const { return mechanisms_.size(); }
  double sum_weights() const;

private:
  std::vector<RelaxationMechanism> mechanisms_;
  double kappa0_;
  std::optional<Provenance> provenance_;
};

// Relaxation frequencies equi-spaced in log Omega across [omega_lo, omega_hi]:
// Omega_nu = lo^((N-nu)/(N-1)) hi^((nu-1)/(N-1)); a single frequency sits at
// the geometric mean.
std::vector<double> select_frequencies(std::size_t n, double omega_lo,
                                       double omega_hi);

// Log-grid stepsizes dW_nu = W_nu (1 - (lo/hi)^(1/(N-1))); hi - lo for a
// single frequency.
std::vector<double> step_sizes(const std::vector<double>& frequencies,
                               double omega_lo, double omega_hi);

// The full selection pipeline: place frequencies, sample densities (exact
// Zener density, or the power law W^(eta-2)), convert to weights through the
// stepsizes, then calibrate the overall scale so the evaluated attenuation
// meets alpha_ref at omega_ref. eta of 0, 1 or 2 takes the degenerate paths
// described in the mode documentation.
RelaxationSet build_relaxation_set(const PowerLawTarget& target,
                                   const Medium& medium, std::size_t n,
                                   DensityMode mode,
                                   double tau_sigma_margin = 1e3);

// Root-find a positive factor on all weights until
// |alpha_k(omega_ref) - alpha_ref| <= 1e-9 relative. Throws
// physicality_error (naming the attainable supremum) when the target cannot
// be met with summed weights below kappa0.
RelaxationSet calibrate(const RelaxationSet& set, const PowerLawTarget& target,
                        const Medium& medium);

// kappa0 - i w Sum w_nu / (Omega_nu + i w); exact finite sum.
ComplexCompressibility discrete_compressibility(const RelaxationSet& set,
                                                double omega);

KappaFn kappa_fn(const RelaxationSet& set);

// Single-mechanism small-attenuation contribution
// A * weight * Omega * w^2/(w^2 + Omega^2), A = sqrt(rho0/kappa0)/2.
double mechanism_attenuation(const RelaxationMechanism& m, const Medium& medium,
                             double omega);

}  // namespace relaxfit
