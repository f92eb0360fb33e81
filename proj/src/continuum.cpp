#include "relaxfit/continuum.hpp"

#include <algorithm>
#include <cmath>

#include "relaxfit/analysis.hpp"
#include "relaxfit/errors.hpp"
#include "relaxfit/quadrature.hpp"

namespace relaxfit {

namespace {

constexpr double pi = 3.141592653589793238462643383279503;

// Window of the substituted variable v = (tau_sigma * Omega)^alpha used for
// fully populated (or clamped) Zener integrals. The truncated tails are
// bounded in closed form below.
constexpr double kVmin = 1e-12;
constexpr double kVmax = 1e12;

// Kernels of the expanded compressibility integrals, robust against
// overflow/underflow of Omega at the far ends of the substituted window:
// both tend to the correct limits when Omega^2 saturates.
double kernel_re(double Omega, double omega) {
  return 1.0 / (Omega * Omega + omega * omega);
}

double kernel_im(double Omega, double omega) {
  if (Omega == 0.0) return 0.0;
  return 1.0 / (Omega + omega * (omega / Omega));
}

struct ZenerIntegrand {
  double alpha;
  double cos_api;
  double sin_api;
  double log_tau_sigma;
  double omega;

  // x = ln v; returns {re_kernel, im_kernel} contribution density in x.
  double eval(double x, bool imaginary) const {
    const double v = std::exp(x);
    const double vc = v + cos_api;
    const double q = vc * vc + sin_api * sin_api;
    const double Omega = std::exp(x / alpha - log_tau_sigma);
    const double k = imaginary ? kernel_im(Omega, omega) : kernel_re(Omega, omega);
    return k * v / q;
  }
};

}  // namespace

double kappa_prime(const ZenerParams& p, double Omega) {
  if (!(p.alpha() < 1.0))
    throw config_error("kappa_prime: alpha = 1 yields a degenerate distribution");
  if (p.alpha() != p.beta())
    throw config_error("kappa_prime: defined for alpha = beta only");
  if (!(Omega > 0.0))
    throw config_error("kappa_prime: Omega must be positive");

  const double a = p.alpha();
  const double strength =
      p.kappa0() * (std::pow(p.tau_sigma(), a) - std::pow(p.tau_epsilon(), a));
  const double v = std::pow(p.tau_sigma() * Omega, a);
  const double c = std::cos(a * pi);
  const double s = std::sin(a * pi);
  const double q = (v + c) * (v + c) + s * s;  // v^2 + 2 v cos + 1
  return strength * std::pow(Omega, a - 1.0) * s / (pi * q);
}

RegimeConstants regime_constants(const ZenerParams& p) {
  const double a = p.alpha();
  if (!(a > 0.0) || !(a < 1.0))
    throw config_error("regime_constants: alpha must lie strictly in (0, 1)");
  const double strength =
      p.kappa0() * (std::pow(p.tau_sigma(), a) - std::pow(p.tau_epsilon(), a));
  const double s = std::sin(a * pi);
  const double c = std::cos(a * pi);
  const double ts_a = std::pow(p.tau_sigma(), a);
  return RegimeConstants{
      strength * s / pi,
      strength * s / (2.0 * pi * ts_a * (1.0 + c)),
      strength * s / (pi * ts_a * ts_a)};
}

ContinuousDistribution::ContinuousDistribution(Kind kind, Band band, double kappa0)
    : kind_(kind), band_(band), kappa0_(kappa0) {
  if (!(band.omega_lo >= 0.0) || !(band.omega_hi >= band.omega_lo))
    throw config_error("ContinuousDistribution: need 0 <= omega_lo <= omega_hi");
  if (!(kappa0 > 0.0))
    throw config_error("ContinuousDistribution: kappa0 must be positive");
}

ContinuousDistribution ContinuousDistribution::zener(const ZenerParams& p,
                                                     Band band, double scale) {
  if (!(p.alpha() < 1.0))
    throw config_error("ContinuousDistribution::zener: alpha = 1 is degenerate");
  if (p.alpha() != p.beta())
    throw config_error("ContinuousDistribution::zener: requires alpha = beta");
  if (!(scale > 0.0))
    throw config_error("ContinuousDistribution::zener: scale must be positive");
  ContinuousDistribution d(Kind::zener_exact, band, p.kappa0());
  d.params_ = p;
  d.scale_ = scale;
  return d;
}

ContinuousDistribution ContinuousDistribution::power_law(double kappa0,
                                                         double amplitude,
                                                         double exponent,
                                                         Band band) {
  if (!(amplitude > 0.0))
    throw config_error("ContinuousDistribution::power_law: amplitude must be positive");
  if (!(exponent > -2.0) || !(exponent <= 0.0))
    throw config_error("ContinuousDistribution::power_law: exponent must lie in (-2, 0]");
  if (!band.empty() &&
      (!(band.omega_lo > 0.0) || !std::isfinite(band.omega_hi)))
    throw config_error("ContinuousDistribution::power_law: band must be finite");
  ContinuousDistribution d(Kind::power_law, band, kappa0);
  d.amplitude_ = amplitude;
  d.exponent_ = exponent;
  return d;
}

const ZenerParams& ContinuousDistribution::zener_params() const {
  if (kind_ != Kind::zener_exact)
    throw config_error("ContinuousDistribution: not a zener_exact distribution");
  return params_;
}

double ContinuousDistribution::density(double Omega) const {
  if (!(Omega >= band_.omega_lo) || !(Omega <= band_.omega_hi) || band_.empty())
    return 0.0;
  if (kind_ == Kind::zener_exact) return scale_ * kappa_prime(params_, Omega);
  return amplitude_ * std::pow(Omega, exponent_);
}

namespace {

struct IntegralPair {
  double real_part;   // Int kappa_nu/(W^2+w^2) dW
  double imag_part;   // Int W kappa_nu/(W^2+w^2) dW
  double kappa_error; // error estimate in kappa units, truncation included
};

// Runs the adaptive integrator but reports failures in kappa units, which
// is the scale callers reason about.
QuadratureResult integrate_in_kappa_units(const std::function<double(double)>& f,
                                          double a, double b, double abs_tol,
                                          int max_panels, double kappa_scale) {
  try {
    return integrate_adaptive(f, a, b, abs_tol, max_panels);
  } catch (const quadrature_error& e) {
    throw quadrature_error("continuum_compressibility: tolerance not met",
                           e.achieved_error() * kappa_scale);
  }
}

IntegralPair zener_integrals(const ContinuousDistribution& dist, double omega,
                             double rel_tol, int max_panels) {
  const ZenerParams& p = dist.zener_params();
  const double a = p.alpha();
  const double ts_a = std::pow(p.tau_sigma(), a);
  const double prefactor = dist.scale() * p.kappa0() *
                           (ts_a - std::pow(p.tau_epsilon(), a)) *
                           std::sin(a * pi) / (pi * a * ts_a);

  // Band edges in v = (tau_sigma Omega)^alpha, clamped into the
  // representable window; clamped mass is bounded analytically.
  double truncation = 0.0;
  double v_lo = kVmin, v_hi = kVmax;
  if (dist.band().omega_lo > 0.0) {
    const double v = std::pow(p.tau_sigma() * dist.band().omega_lo, a);
    v_lo = std::clamp(v, kVmin, kVmax);
    if (v < kVmin) truncation += 2.0 * prefactor * kVmin;
  } else {
    truncation += 2.0 * prefactor * kVmin;
  }
  if (std::isfinite(dist.band().omega_hi)) {
    const double v = std::pow(p.tau_sigma() * dist.band().omega_hi, a);
    v_hi = std::clamp(v, kVmin, kVmax);
    if (v > kVmax) truncation += 6.0 * prefactor / kVmax;
  } else {
    truncation += 6.0 * prefactor / kVmax;
  }
  if (!(v_lo < v_hi)) return IntegralPair{0.0, 0.0, truncation};

  const ZenerIntegrand g{a, std::cos(a * pi), std::sin(a * pi),
                         std::log(p.tau_sigma()), omega};
  const double x_lo = std::log(v_lo), x_hi = std::log(v_hi);

  // Split the kappa-scale budget between the two integrals.
  const double scale_re = prefactor * omega * omega;
  const double scale_im = prefactor * omega;
  const double tol_re = 0.5 * rel_tol * dist.kappa0() / std::max(scale_re, 1e-300);
  const double tol_im = 0.5 * rel_tol * dist.kappa0() / std::max(scale_im, 1e-300);

  const auto re = integrate_in_kappa_units(
      [&](double x) { return g.eval(x, false); }, x_lo, x_hi, tol_re, max_panels,
      scale_re);
  const auto im = integrate_in_kappa_units(
      [&](double x) { return g.eval(x, true); }, x_lo, x_hi, tol_im, max_panels,
      scale_im);

  return IntegralPair{
      prefactor * re.value, prefactor * im.value,
      re.error * scale_re + im.error * scale_im + truncation};
}

IntegralPair power_law_integrals(const ContinuousDistribution& dist, double omega,
                                 double rel_tol, int max_panels) {
  const double d = dist.exponent();
  const double C = dist.amplitude();
  const double x_lo = std::log(dist.band().omega_lo);
  const double x_hi = std::log(dist.band().omega_hi);

  const double scale_re = C * omega * omega;
  const double scale_im = C * omega;
  const double tol_re = 0.5 * rel_tol * dist.kappa0() / std::max(scale_re, 1e-300);
  const double tol_im = 0.5 * rel_tol * dist.kappa0() / std::max(scale_im, 1e-300);

  // dW = W dx folds one power of Omega into the exponent.
  const auto re = integrate_in_kappa_units(
      [&](double x) {
        const double Omega = std::exp(x);
        return kernel_re(Omega, omega) * std::exp((d + 1.0) * x);
      },
      x_lo, x_hi, tol_re, max_panels, scale_re);
  const auto im = integrate_in_kappa_units(
      [&](double x) {
        const double Omega = std::exp(x);
        return kernel_im(Omega, omega) * std::exp((d + 1.0) * x);
      },
      x_lo, x_hi, tol_im, max_panels, scale_im);

  return IntegralPair{C * re.value, C * im.value,
                      re.error * scale_re + im.error * scale_im};
}

}  // namespace

ComplexCompressibility continuum_compressibility(const ContinuousDistribution& dist,
                                                 double omega, double rel_tol,
                                                 int max_panels) {
  if (omega < 0.0)
    throw config_error("continuum_compressibility: omega must be >= 0");
  if (!(rel_tol > 0.0))
    throw config_error("continuum_compressibility: rel_tol must be positive");
  if (omega == 0.0 || dist.band().empty())
    return ComplexCompressibility(dist.kappa0(), 0.0);

  const IntegralPair ints =
      dist.kind() == ContinuousDistribution::Kind::zener_exact
          ? zener_integrals(dist, omega, rel_tol, max_panels)
          : power_law_integrals(dist, omega, rel_tol, max_panels);

  if (ints.kappa_error > 2.0 * rel_tol * dist.kappa0())
    throw quadrature_error("continuum_compressibility: tolerance not met",
                           ints.kappa_error);

  return ComplexCompressibility(dist.kappa0() - omega * omega * ints.real_part,
                                -omega * ints.imag_part);
}

KappaFn kappa_fn(const ContinuousDistribution& dist, double rel_tol) {
  return [dist, rel_tol](double omega) {
    return continuum_compressibility(dist, omega, rel_tol);
  };
}

double bandlimited_equivalence_gap(const ZenerParams& p, Band band, double omega,
                                   double rel_tol) {
  const auto banded =
      continuum_compressibility(ContinuousDistribution::zener(p, band), omega, rel_tol);
  const auto full = continuum_compressibility(
      ContinuousDistribution::zener(p, Band::full()), omega, rel_tol);
  return std::abs(banded - full) / std::abs(full);
}

BandAsymptoteSlopes asymptotic_band_attenuation_check(
    const ContinuousDistribution& dist, const Medium& medium,
    const FrequencyGrid& below_grid, const FrequencyGrid& above_grid) {
  if (!(dist.band().omega_lo > 0.0) || !std::isfinite(dist.band().omega_hi))
    throw config_error("asymptotic_band_attenuation_check: band must be finite");
  if (!(below_grid.back() <= dist.band().omega_lo / 50.0))
    throw config_error("asymptotic_band_attenuation_check: below_grid overlaps the band margin");
  if (!(above_grid.front() >= 50.0 * dist.band().omega_hi))
    throw config_error("asymptotic_band_attenuation_check: above_grid overlaps the band margin");

  const auto fn = kappa_fn(dist);
  const DispersionCurve below = eval_dispersion(fn, medium, below_grid);
  const DispersionCurve above = eval_dispersion(fn, medium, above_grid);
  return BandAsymptoteSlopes{
      loglog_slope(below, below_grid.front(), below_grid.back()),
      loglog_slope(above, above_grid.front(), above_grid.back())};
}

}  // namespace relaxfit
