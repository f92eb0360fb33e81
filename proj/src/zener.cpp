#include "relaxfit/zener.hpp"

#include <cmath>

#include "relaxfit/errors.hpp"

namespace relaxfit {

namespace {
constexpr double pi = 3.141592653589793238462643383279503;

// (i w tau)^a on the principal branch; w, tau >= 0 puts the argument at a*pi/2.
std::complex<double> imaginary_power(double omega, double tau, double a) {
  if (omega == 0.0 || tau == 0.0) {
    // 0^0 = 1 by the continuity convention used for a -> 0 in the ratio.
    return a == 0.0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 0.0);
  }
  return std::polar(std::pow(omega * tau, a), a * pi / 2.0);
}
}  // namespace

ZenerParams::ZenerParams(double alpha, double beta, double tau_sigma,
                         double tau_epsilon, double kappa0)
    : alpha_(alpha),
      beta_(beta),
      tau_sigma_(tau_sigma),
      tau_epsilon_(tau_epsilon),
      kappa0_(kappa0) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw config_error("ZenerParams: alpha must lie in (0, 1]");
  if (!(beta >= 0.0) || !(beta <= alpha))
    throw config_error("ZenerParams: beta must lie in [0, alpha]");
  if (!(tau_epsilon >= 0.0) || !(tau_sigma > tau_epsilon))
    throw config_error("ZenerParams: need tau_sigma > tau_epsilon >= 0");
  if (!(kappa0 > 0.0)) throw config_error("ZenerParams: kappa0 must be positive");
}

ZenerParams ZenerParams::symmetric(double alpha, double tau_sigma,
                                   double tau_epsilon, double kappa0) {
  return ZenerParams(alpha, alpha, tau_sigma, tau_epsilon, kappa0);
}

ComplexCompressibility zener_compressibility(const ZenerParams& p, double omega) {
  if (omega < 0.0) throw config_error("zener_compressibility: omega must be >= 0");
  if (omega == 0.0) return ComplexCompressibility(p.kappa0(), 0.0);
  const auto num = 1.0 + imaginary_power(omega, p.tau_epsilon(), p.beta());
  const auto den = 1.0 + imaginary_power(omega, p.tau_sigma(), p.alpha());
  return p.kappa0() * num / den;
}

KappaFn kappa_fn(const ZenerParams& p) {
  return [p](double omega) { return zener_compressibility(p, omega); };
}

RegimeExponents zener_regime_exponents(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw config_error("zener_regime_exponents: alpha must lie in (0, 1]");
  return RegimeExponents{1.0 + alpha, 1.0 - alpha / 2.0, 1.0 - alpha};
}

double RegimeSelection::tau_sigma_for_band(double omega_lo, double omega_hi,
                                           double margin) const {
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo) || !(margin > 1.0))
    throw config_error("tau_sigma_for_band: bad band or margin");
  switch (regime) {
    case Regime::low:
      return 1.0 / (margin * omega_hi);
    case Regime::high:
      return margin / omega_lo;
    case Regime::unity:
      break;
  }
  throw config_error("tau_sigma_for_band: eta = 1 has no Zener knee placement");
}

RegimeSelection regime_for_target(double eta) {
  if (!(eta >= 0.0) || !(eta <= 2.0))
    throw config_error("regime_for_target: eta must lie in [0, 2]");
  if (eta > 1.0) return RegimeSelection{Regime::low, eta - 1.0};
  if (eta < 1.0) return RegimeSelection{Regime::high, 1.0 - eta};
  return RegimeSelection{Regime::unity, 0.0};
}

}  // namespace relaxfit
