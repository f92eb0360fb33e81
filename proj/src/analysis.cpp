#include "relaxfit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "relaxfit/errors.hpp"
#include "relaxfit/quadrature.hpp"

namespace relaxfit {

std::complex<double> wavenumber(ComplexCompressibility kappa, const Medium& medium,
                                double omega) {
  if (omega < 0.0) throw config_error("wavenumber: omega must be >= 0");
  if (kappa.imag() == 0.0 && kappa.real() <= 0.0)
    throw numeric_error("wavenumber: non-positive real compressibility is unphysical");
  return omega * std::sqrt(medium.rho0()) * std::sqrt(kappa);
}

namespace {

struct Sample {
  double attenuation;
  double phase_velocity;
};

Sample dispersion_sample(const KappaFn& kappa, const Medium& medium, double omega) {
  const std::complex<double> root = std::sqrt(kappa(omega));
  if (root.real() == 0.0)
    throw numeric_error("dispersion: zero Re sqrt(kappa), phase velocity undefined");
  const double sqrt_rho = std::sqrt(medium.rho0());
  return Sample{-omega * sqrt_rho * root.imag(), 1.0 / (sqrt_rho * root.real())};
}

}  // namespace

DispersionCurve eval_dispersion_serial(const KappaFn& kappa, const Medium& medium,
                                       const FrequencyGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> att(n), cp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Sample s = dispersion_sample(kappa, medium, grid[i]);
    att[i] = s.attenuation;
    cp[i] = s.phase_velocity;
  }
  return DispersionCurve{grid, std::move(att), std::move(cp)};
}

DispersionCurve eval_dispersion(const KappaFn& kappa, const Medium& medium,
                                const FrequencyGrid& grid) {
#ifdef _OPENMP
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<double> att(grid.size()), cp(grid.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const Sample s = dispersion_sample(kappa, medium, grid[static_cast<std::size_t>(i)]);
      att[static_cast<std::size_t>(i)] = s.attenuation;
      cp[static_cast<std::size_t>(i)] = s.phase_velocity;
    } catch (...) {
#pragma omp critical(relaxfit_dispersion_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return DispersionCurve{grid, std::move(att), std::move(cp)};
#else
  return eval_dispersion_serial(kappa, medium, grid);
#endif
}

double target_attenuation(const PowerLawTarget& target, double omega) {
  if (!(omega > 0.0)) throw config_error("target_attenuation: omega must be positive");
  return target.alpha_ref() * std::pow(omega / target.omega_ref(), target.eta());
}

double small_attenuation_attenuation(const RelaxationSet& set, const Medium& medium,
                                     double omega) {
  double total = 0.0;
  for (const auto& m : set.mechanisms()) total += mechanism_attenuation(m, medium, omega);
  return total;
}

double small_attenuation_attenuation(const ContinuousDistribution& dist,
                                     const Medium& medium, double omega,
                                     double rel_tol) {
  if (omega < 0.0) throw config_error("small_attenuation_attenuation: omega must be >= 0");
  if (omega == 0.0) return 0.0;
  // A w^2 Int W kappa_nu/(W^2+w^2) dW = -A w Im{kappa_N - kappa0}.
  const auto kappa = continuum_compressibility(dist, omega, rel_tol);
  const double A = std::sqrt(medium.rho0() / medium.kappa0()) / 2.0;
  return -A * omega * kappa.imag();
}

namespace {

// Indices of grid samples inside [band_lo, band_hi], endpoints inclusive.
std::vector<std::size_t> band_indices(const FrequencyGrid& grid, double band_lo,
                                      double band_hi) {
  if (!(band_lo > 0.0) || !(band_lo <= band_hi))
    throw config_error("band metrics: need 0 < band_lo <= band_hi");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] >= band_lo && grid[i] <= band_hi) idx.push_back(i);
  return idx;
}

}  // namespace

FitReport normalize_to_target(const DispersionCurve& curve,
                              const PowerLawTarget& target, double band_lo,
                              double band_hi) {
  const auto idx = band_indices(curve.grid, band_lo, band_hi);
  if (idx.empty())
    throw config_error("normalize_to_target: no grid samples inside the band");

  double g_min = HUGE_VAL, g_max = -HUGE_VAL;
  std::vector<double> ratio(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const double g = curve.attenuation[idx[j]] /
                     target_attenuation(target, curve.grid[idx[j]]);
    if (!(g > 0.0))
      throw numeric_error("normalize_to_target: non-positive attenuation ratio");
    ratio[j] = g;
    g_min = std::min(g_min, g);
    g_max = std::max(g_max, g);
  }

  const double scale = 2.0 / (g_max + g_min);
  FitReport report;
  report.normalization_scale = scale;
  report.band_lo = band_lo;
  report.band_hi = band_hi;
  report.per_sample_rel_diff.resize(idx.size());
  double max_abs = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const double r = scale * ratio[j] - 1.0;
    report.per_sample_rel_diff[j] = r;
    max_abs = std::max(max_abs, std::abs(r));
  }
  report.max_rel_diff = max_abs;
  return report;
}

double max_rel_diff_unnormalized(const DispersionCurve& curve,
                                 const PowerLawTarget& target, double band_lo,
                                 double band_hi) {
  const auto idx = band_indices(curve.grid, band_lo, band_hi);
  if (idx.empty())
    throw config_error("max_rel_diff_unnormalized: no grid samples inside the band");
  double max_abs = 0.0;
  for (std::size_t i : idx) {
    const double g =
        curve.attenuation[i] / target_attenuation(target, curve.grid[i]);
    if (!(g > 0.0))
      throw numeric_error("max_rel_diff_unnormalized: non-positive attenuation ratio");
    max_abs = std::max(max_abs, std::abs(g - 1.0));
  }
  return max_abs;
}

double loglog_slope(const DispersionCurve& curve, double band_lo, double band_hi) {
  const auto idx = band_indices(curve.grid, band_lo, band_hi);
  if (idx.size() < 2)
    throw config_error("loglog_slope: need at least two in-band samples");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i : idx) {
    if (!(curve.attenuation[i] > 0.0))
      throw numeric_error("loglog_slope: attenuation must be positive in the band");
    const double x = std::log(curve.grid[i]);
    const double y = std::log(curve.attenuation[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(idx.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw config_error("loglog_slope: degenerate band");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace relaxfit
