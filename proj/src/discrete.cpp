#include "relaxfit/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "relaxfit/continuum.hpp"
#include "relaxfit/errors.hpp"
#include "relaxfit/rootfind.hpp"

namespace relaxfit {

namespace {

void validate_mechanism(const RelaxationMechanism& m) {
  if (!(m.omega_nu > 0.0))
    throw config_error("RelaxationMechanism: omega_nu must be positive");
  if (!(m.density >= 0.0))
    throw config_error("RelaxationMechanism: density must be non-negative");
  if (!(m.step > 0.0)) throw config_error("RelaxationMechanism: step must be positive");
  const double product = m.density * m.step;
  const double tol = 1e-12 * std::max(std::abs(product), std::abs(m.weight));
  if (std::abs(m.weight - product) > tol)
    throw config_error("RelaxationMechanism: weight must equal density * step");
}

}  // namespace

RelaxationSet::RelaxationSet(std::vector<RelaxationMechanism> mechanisms,
                             double kappa0, std::optional<Provenance> provenance)
    : mechanisms_(std::move(mechanisms)),
      kappa0_(kappa0),
      provenance_(std::move(provenance)) {
  if (!(kappa0 > 0.0)) throw config_error("RelaxationSet: kappa0 must be positive");
  double prev = 0.0;
  double total = 0.0;
  for (const auto& m : mechanisms_) {
    validate_mechanism(m);
    if (!(m.omega_nu > prev))
      throw config_error("RelaxationSet: mechanisms must be sorted by ascending, distinct omega_nu");
    prev = m.omega_nu;
    total += m.weight;
  }
  if (!(total < kappa0))
    throw config_error("RelaxationSet: summed weights must stay below kappa0");
}

double RelaxationSet::sum_weights() const {
  double total = 0.0;
  for (const auto& m : mechanisms_) total += m.weight;
  return total;
}

std::vector<double> select_frequencies(std::size_t n, double omega_lo,
                                       double omega_hi) {
  if (n == 0) throw config_error("select_frequencies: need at least one mechanism");
  if (!(omega_lo > 0.0) || !(omega_lo < omega_hi))
    throw config_error("select_frequencies: need 0 < omega_lo < omega_hi");
  if (n == 1) return {std::sqrt(omega_lo) * std::sqrt(omega_hi)};
  return make_log_grid(omega_lo, omega_hi, n).samples();
}

std::vector<double> step_sizes(const std::vector<double>& frequencies,
                               double omega_lo, double omega_hi) {
  if (frequencies.empty()) throw config_error("step_sizes: empty frequency list");
  if (!(omega_lo > 0.0) || !(omega_lo < omega_hi))
    throw config_error("step_sizes: need 0 < omega_lo < omega_hi");
  if (frequencies.size() == 1) return {omega_hi - omega_lo};
  const double n1 = static_cast<double>(frequencies.size() - 1);
  const double factor = 1.0 - std::pow(omega_lo / omega_hi, 1.0 / n1);
  std::vector<double> steps(frequencies.size());
  for (std::size_t i = 0; i < frequencies.size(); ++i)
    steps[i] = frequencies[i] * factor;
  return steps;
}

ComplexCompressibility discrete_compressibility(const RelaxationSet& set,
                                                double omega) {
  if (omega < 0.0)
    throw config_error("discrete_compressibility: omega must be >= 0");
  // kappa0 - i w Sum w_nu/(W_nu + i w), expanded into real and imaginary parts.
  double re_loss = 0.0, im_loss = 0.0;
  for (const auto& m : set.mechanisms()) {
    const double denom = m.omega_nu * m.omega_nu + omega * omega;
    re_loss += m.weight * omega * omega / denom;
    im_loss += m.weight * omega * m.omega_nu / denom;
  }
  return ComplexCompressibility(set.kappa0() - re_loss, -im_loss);
}

KappaFn kappa_fn(const RelaxationSet& set) {
  return [set](double omega) { return discrete_compressibility(set, omega); };
}

double mechanism_attenuation(const RelaxationMechanism& m, const Medium& medium,
                             double omega) {
  if (omega < 0.0) throw config_error("mechanism_attenuation: omega must be >= 0");
  if (omega == 0.0) return 0.0;
  const double A = std::sqrt(medium.rho0() / medium.kappa0()) / 2.0;
  const double q = m.omega_nu / omega;
  return A * m.weight * m.omega_nu / (1.0 + q * q);
}

namespace {

// Exact attenuation of the scaled set at one frequency. The loss sum T is
// independent of the scale, so calibration evaluates it once.
std::complex<double> loss_sum(const std::vector<RelaxationMechanism>& mechanisms,
                              double omega) {
  double re = 0.0, im = 0.0;
  for (const auto& m : mechanisms) {
    const double denom = m.omega_nu * m.omega_nu + omega * omega;
    re += m.weight * omega * omega / denom;
    im += m.weight * omega * m.omega_nu / denom;
  }
  return {re, im};
}

double attenuation_of_scale(double kappa0, std::complex<double> loss, double scale,
                            const Medium& medium, double omega) {
  const std::complex<double> kappa(kappa0 - scale * loss.real(),
                                   -scale * loss.imag());
  return -omega * std::sqrt(medium.rho0()) * std::sqrt(kappa).imag();
}

std::optional<double> realized_tau_epsilon(const ZenerParams& p, double total_scale) {
  const double ts_a = std::pow(p.tau_sigma(), p.alpha());
  const double te0_a = std::pow(p.tau_epsilon(), p.alpha());
  const double te_a = ts_a - total_scale * (ts_a - te0_a);
  if (te_a < 0.0) return std::nullopt;
  return std::pow(te_a, 1.0 / p.alpha());
}

}  // namespace

RelaxationSet calibrate(const RelaxationSet& set, const PowerLawTarget& target,
                        const Medium& medium) {
  const double sum_w = set.sum_weights();
  if (!(sum_w > 0.0))
    throw config_error("calibrate: set has no positive weights");

  const double omega_ref = target.omega_ref();
  const double alpha_ref = target.alpha_ref();
  const std::complex<double> loss = loss_sum(set.mechanisms(), omega_ref);
  const auto miss = [&](double s) {
    return attenuation_of_scale(set.kappa0(), loss, s, medium, omega_ref) - alpha_ref;
  };

  // Scales at and beyond s_cap would push the summed weights to kappa0.
  const double s_cap = (set.kappa0() / sum_w) * (1.0 - 1e-12);
  const double f_tol = 1e-12 * alpha_ref;

  double lo = 1.0, hi = 1.0;
  double f_lo = miss(1.0), f_hi = f_lo;
  if (std::abs(f_lo) > f_tol) {
    if (f_lo > 0.0) {
      while (f_lo > 0.0) {
        hi = lo;
        f_hi = f_lo;
        lo /= 4.0;
        if (lo < 1e-300)
          throw calibration_error("calibrate: bracketing failed toward zero scale");
        f_lo = miss(lo);
      }
    } else {
      while (f_hi < 0.0) {
        if (hi >= s_cap) {
          const double attainable = alpha_ref + f_hi;
          throw physicality_error(
              "calibrate: alpha_ref exceeds what summed weights below kappa0 can "
              "produce; attainable alpha_ref < " +
                  std::to_string(attainable) + " Np/m",
              attainable);
        }
        lo = hi;
        f_lo = f_hi;
        hi = std::min(hi * 4.0, s_cap);
        f_hi = miss(hi);
      }
    }
  }

  double scale = 1.0;
  if (std::abs(f_lo) <= f_tol && lo == 1.0) {
    scale = 1.0;  // already calibrated
  } else {
    const RootResult root =
        find_root_bracketed(miss, lo, hi, f_lo, f_hi, 1e-15, f_tol, 300);
    if (!root.converged)
      throw calibration_error("calibrate: root refinement did not converge");
    scale = root.x;
  }

  std::vector<RelaxationMechanism> scaled = set.mechanisms();
  for (auto& m : scaled) {
    m.density *= scale;
    m.weight = m.density * m.step;
  }

  std::optional<Provenance> provenance = set.provenance();
  if (provenance) {
    provenance->calibration_scale *= scale;
    if (provenance->zener)
      provenance->tau_epsilon_realized =
          realized_tau_epsilon(*provenance->zener, provenance->calibration_scale);
  }
  return RelaxationSet(std::move(scaled), set.kappa0(), std::move(provenance));
}

RelaxationSet build_relaxation_set(const PowerLawTarget& target,
                                   const Medium& medium, std::size_t n,
                                   DensityMode mode, double tau_sigma_margin) {
  if (n == 0) throw config_error("build_relaxation_set: need at least one mechanism");
  if (!(tau_sigma_margin > 1.0))
    throw config_error("build_relaxation_set: tau_sigma_margin must exceed 1");

  const double kappa0 = medium.kappa0();
  const double eta = target.eta();
  const double A = std::sqrt(medium.rho0() / kappa0) / 2.0;

  std::vector<RelaxationMechanism> mechanisms;
  std::optional<ZenerParams> density_params;
  double prescale = 1.0;

  if (eta == 0.0 || eta == 2.0) {
    // Degenerate targets: the distribution collapses to a single impulse
    // outside the band (thermoviscous-like), whatever n was requested.
    const double omega_nu = eta == 2.0 ? tau_sigma_margin * target.omega_hi()
                                       : target.omega_lo() / tau_sigma_margin;
    const double q = omega_nu / target.omega_ref();
    double seed = target.alpha_ref() * (1.0 + q * q) / (A * omega_nu);
    seed = std::min(seed, 0.25 * kappa0);
    mechanisms.push_back(RelaxationMechanism{omega_nu, seed, 1.0, seed});
  } else {
    const std::vector<double> freqs =
        select_frequencies(n, target.omega_lo(), target.omega_hi());
    const std::vector<double> steps =
        step_sizes(freqs, target.omega_lo(), target.omega_hi());

    std::vector<double> densities(n);
    if (mode == DensityMode::zener_exact && eta != 1.0) {
      const RegimeSelection sel = regime_for_target(eta);
      const double tau_sigma =
          sel.tau_sigma_for_band(target.omega_lo(), target.omega_hi(), tau_sigma_margin);
      const ZenerParams params =
          ZenerParams::symmetric(sel.alpha, tau_sigma, 0.0, kappa0);
      for (std::size_t i = 0; i < n; ++i)
        densities[i] = kappa_prime(params, freqs[i]);
      density_params = params;
    } else {
      // Power-law density W^(eta-2); also the eta = 1 path, where the Zener
      // density degenerates. Seed the amplitude from the small-attenuation
      // estimate at the reference frequency so calibration starts near 1.
      double response = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double q = freqs[i] / target.omega_ref();
        response += A * std::pow(freqs[i], eta - 2.0) * steps[i] * freqs[i] /
                    (1.0 + q * q);
      }
      const double amplitude = target.alpha_ref() / response;
      for (std::size_t i = 0; i < n; ++i)
        densities[i] = amplitude * std::pow(freqs[i], eta - 2.0);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += densities[i] * steps[i];
    if (total >= 0.5 * kappa0) prescale = 0.25 * kappa0 / total;

    mechanisms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double density = densities[i] * prescale;
      mechanisms.push_back(
          RelaxationMechanism{freqs[i], density, steps[i], density * steps[i]});
    }
  }

  Provenance provenance{target, mode, tau_sigma_margin, density_params, prescale,
                        std::nullopt};
  RelaxationSet raw(std::move(mechanisms), kappa0, std::move(provenance));
  return calibrate(raw, target, medium);
}

}  // namespace relaxfit
