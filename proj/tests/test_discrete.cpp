#include <doctest.h>

#include <cmath>
#include <random>

#include "relaxfit/analysis.hpp"
#include "relaxfit/errors.hpp"
#include "relaxfit/set_io.hpp"

using namespace relaxfit;

namespace {

const Medium kTissue = Medium::from_speed_density(1540.0, 1050.0);

PowerLawTarget table1_target(double f_lo_hz = 1e5, double f_hi_hz = 30e6) {
  return PowerLawTarget(1.1, db_per_cm_to_np_per_m(0.3), hz_to_angular(1e6),
                        hz_to_angular(f_lo_hz), hz_to_angular(f_hi_hz));
}

double exact_attenuation(const RelaxationSet& set, const Medium& medium, double omega) {
  return -omega * std::sqrt(medium.rho0()) *
         std::sqrt(discrete_compressibility(set, omega)).imag();
}

}  // namespace

TEST_CASE("frequency selection on the log grid") {
  const auto three = select_frequencies(3, 0.1, 30.0);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(three[1] == doctest::Approx(1.7320508075688772).epsilon(1e-12));
  CHECK(three[2] == doctest::Approx(30.0).epsilon(1e-14));

  const auto two = select_frequencies(2, 0.5, 7.0);
  CHECK(two[0] == 0.5);
  CHECK(two[1] == 7.0);

  const auto one = select_frequencies(1, 0.1, 30.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(1.7320508075688772).epsilon(1e-12));

  CHECK_THROWS_AS(select_frequencies(0, 0.1, 30.0), config_error);
  CHECK_THROWS_AS(select_frequencies(3, 30.0, 0.1), config_error);
}

TEST_CASE("selected frequencies are exactly geometric") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> lo_dist(1e2, 1e7);
  std::uniform_real_distribution<double> ratio_dist(3.0, 1e5);
  for (int trial = 0; trial < 30; ++trial) {
    const double lo = lo_dist(rng);
    const double hi = lo * ratio_dist(rng);
    const auto freqs = select_frequencies(7, lo, hi);
    const double r0 = freqs[1] / freqs[0];
    for (std::size_t i = 1; i + 1 < freqs.size(); ++i)
      CHECK(freqs[i + 1] / freqs[i] == doctest::Approx(r0).epsilon(1e-12));
  }
}

TEST_CASE("stepsizes carry the uneven log-grid factor") {
  const auto freqs = select_frequencies(2, 0.1, 30.0);
  const auto steps = step_sizes(freqs, 0.1, 30.0);
  CHECK(steps[0] == doctest::Approx(0.1 * (1.0 - 0.1 / 30.0)).epsilon(1e-12));
  CHECK(steps[1] == doctest::Approx(30.0 * (1.0 - 0.1 / 30.0)).epsilon(1e-12));

  const auto f3 = select_frequencies(3, 1.0, 100.0);
  const auto s3 = step_sizes(f3, 1.0, 100.0);
  CHECK(s3[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(s3[1] == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(s3[2] == doctest::Approx(90.0).epsilon(1e-12));

  // step/frequency ratio identical across mechanisms
  const auto f6 = select_frequencies(6, 2.0, 3000.0);
  const auto s6 = step_sizes(f6, 2.0, 3000.0);
  for (std::size_t i = 0; i < f6.size(); ++i)
    CHECK(s6[i] / f6[i] == doctest::Approx(s6[0] / f6[0]).epsilon(1e-12));

  // single mechanism takes the whole band width
  CHECK(step_sizes({1.7}, 0.1, 30.0)[0] == doctest::Approx(29.9).epsilon(1e-12));
}

TEST_CASE("discrete compressibility sum") {
  const RelaxationSet empty({}, 2e-10);
  CHECK(discrete_compressibility(empty, 12.3) == ComplexCompressibility(2e-10, 0.0));
  CHECK(discrete_compressibility(empty, 0.0) == ComplexCompressibility(2e-10, 0.0));

  // one mechanism at its own relaxation frequency: kappa0 - w/2 - i w/2
  const double w = 1e-11;
  const RelaxationSet one({RelaxationMechanism{5.0, w, 1.0, w}}, 1e-10);
  const auto k = discrete_compressibility(one, 5.0);
  CHECK(k.real() == doctest::Approx(1e-10 - w / 2.0).epsilon(1e-14));
  CHECK(k.imag() == doctest::Approx(-w / 2.0).epsilon(1e-14));

  // high-frequency limit: kappa0 - sum of weights
  const RelaxationSet many(
      {RelaxationMechanism{1.0, 1e-12, 1.0, 1e-12},
       RelaxationMechanism{40.0, 2e-12, 1.0, 2e-12},
       RelaxationMechanism{900.0, 5e-13, 1.0, 5e-13}},
      1e-10);
  const auto tail = discrete_compressibility(many, 1e9 * 900.0);
  CHECK(tail.real() ==
        doctest::Approx(1e-10 - many.sum_weights()).epsilon(1e-8));
  CHECK(discrete_compressibility(many, 0.0) == ComplexCompressibility(1e-10, 0.0));
}

TEST_CASE("set invariants are enforced") {
  CHECK_THROWS_AS(RelaxationSet({RelaxationMechanism{1.0, 1.0, 1.0, 1.0}}, 0.5),
                  config_error);  // weights reach kappa0
  CHECK_THROWS_AS(RelaxationSet({RelaxationMechanism{2.0, 1e-12, 1.0, 1e-12},
                                 RelaxationMechanism{1.0, 1e-12, 1.0, 1e-12}},
                                1e-10),
                  config_error);  // unsorted
  CHECK_THROWS_AS(RelaxationSet({RelaxationMechanism{1.0, 1e-12, 1.0, 1e-12},
                                 RelaxationMechanism{1.0, 1e-12, 1.0, 1e-12}},
                                1e-10),
                  config_error);  // duplicate frequency
  CHECK_THROWS_AS(RelaxationSet({RelaxationMechanism{1.0, 1e-12, 2.0, 1e-12}}, 1e-10),
                  config_error);  // weight != density * step
  CHECK_THROWS_AS(RelaxationSet({RelaxationMechanism{-1.0, 1e-12, 1.0, 1e-12}}, 1e-10),
                  config_error);
}

TEST_CASE("mechanism attenuation") {
  const RelaxationMechanism m{100.0, 2e-12, 1.0, 2e-12};
  const double A = std::sqrt(kTissue.rho0() / kTissue.kappa0()) / 2.0;
  CHECK(mechanism_attenuation(m, kTissue, 100.0) ==
        doctest::Approx(A * m.weight * 100.0 / 2.0).epsilon(1e-12));
  CHECK(mechanism_attenuation(m, kTissue, 0.0) == 0.0);
}

TEST_CASE("table-1 style fits meet the reported quality") {
  const PowerLawTarget target = table1_target();
  const FrequencyGrid grid = make_log_grid(target.omega_lo(), target.omega_hi(), 300);

  const RelaxationSet n3 =
      build_relaxation_set(target, kTissue, 3, DensityMode::power_law);
  REQUIRE(n3.size() == 3);
  const auto curve3 = eval_dispersion(kappa_fn(n3), kTissue, grid);
  const FitReport rep3 =
      normalize_to_target(curve3, target, target.omega_lo(), target.omega_hi());
  CHECK(rep3.max_rel_diff <= 0.15);

  const RelaxationSet n2 =
      build_relaxation_set(target, kTissue, 2, DensityMode::power_law);
  const auto curve2 = eval_dispersion(kappa_fn(n2), kTissue, grid);
  const FitReport rep2 =
      normalize_to_target(curve2, target, target.omega_lo(), target.omega_hi());
  CHECK(rep2.max_rel_diff >= 0.50);
  CHECK(rep2.max_rel_diff <= 0.75);
}

TEST_CASE("fitted weights land at the reported magnitudes") {
  // reported three-mechanism weights are 1.0, 1.3, 1.8 TPa^-1 and the
  // single-mechanism weight 2.6 TPa^-1; the unit convention is ambiguous at
  // source, so pin the order of magnitude and the internal ratios instead
  const PowerLawTarget target = table1_target();
  const RelaxationSet n1 =
      build_relaxation_set(target, kTissue, 1, DensityMode::power_law);
  CHECK(n1.mechanisms()[0].weight > 2.6e-13);
  CHECK(n1.mechanisms()[0].weight < 2.6e-11);

  const RelaxationSet n3 =
      build_relaxation_set(target, kTissue, 3, DensityMode::power_law);
  const double w0 = n3.mechanisms()[0].weight;
  CHECK(w0 > 1e-13);
  CHECK(w0 < 1e-11);
  CHECK(n3.mechanisms()[1].weight / w0 == doctest::Approx(1.3).epsilon(0.15));
  CHECK(n3.mechanisms()[2].weight / w0 == doctest::Approx(1.8).epsilon(0.15));
}

TEST_CASE("calibration holds at the reference frequency") {
  for (DensityMode mode : {DensityMode::power_law, DensityMode::zener_exact}) {
    const PowerLawTarget target = table1_target();
    const RelaxationSet set = build_relaxation_set(target, kTissue, 4, mode);
    const double got = exact_attenuation(set, kTissue, target.omega_ref());
    CHECK(std::abs(got - target.alpha_ref()) / target.alpha_ref() <= 1e-9);
    CHECK(set.sum_weights() < kTissue.kappa0());
  }
}

TEST_CASE("calibrate is a fixed point on calibrated sets") {
  const PowerLawTarget target = table1_target();
  const RelaxationSet set =
      build_relaxation_set(target, kTissue, 3, DensityMode::power_law);
  const RelaxationSet again = calibrate(set, target, kTissue);
  for (std::size_t i = 0; i < set.size(); ++i)
    CHECK(again.mechanisms()[i].weight ==
          doctest::Approx(set.mechanisms()[i].weight).epsilon(1e-9));
}

TEST_CASE("doubling the wanted attenuation doubles the weights") {
  // small-attenuation regime: alpha c0 / omega ~ 8e-4 at the reference
  const PowerLawTarget base = table1_target();
  const PowerLawTarget doubled(base.eta(), 2.0 * base.alpha_ref(), base.omega_ref(),
                               base.omega_lo(), base.omega_hi());
  const RelaxationSet s1 = build_relaxation_set(base, kTissue, 3, DensityMode::power_law);
  const RelaxationSet s2 =
      build_relaxation_set(doubled, kTissue, 3, DensityMode::power_law);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const double ratio = s2.mechanisms()[i].weight / s1.mechanisms()[i].weight;
    CHECK(std::abs(ratio - 2.0) <= 0.02);
  }
}

TEST_CASE("unreachable attenuation raises a physicality error") {
  const PowerLawTarget absurd(1.1, 1e9, hz_to_angular(1e6), hz_to_angular(1e5),
                              hz_to_angular(30e6));
  try {
    build_relaxation_set(absurd, kTissue, 3, DensityMode::power_law);
    FAIL("expected physicality_error");
  } catch (const physicality_error& e) {
    CHECK(e.max_attainable_alpha_ref() > 0.0);
    CHECK(e.max_attainable_alpha_ref() < 1e9);
  }
}

TEST_CASE("calibrate rejects weightless sets") {
  const RelaxationSet empty({}, kTissue.kappa0());
  CHECK_THROWS_AS(calibrate(empty, table1_target(), kTissue), config_error);
}

TEST_CASE("single mechanism shows the impulse asymptotes") {
  const PowerLawTarget target = table1_target();
  const RelaxationSet set =
      build_relaxation_set(target, kTissue, 1, DensityMode::power_law);
  REQUIRE(set.size() == 1);
  const double omega1 = set.mechanisms()[0].omega_nu;
  CHECK(omega1 ==
        doctest::Approx(std::sqrt(target.omega_lo() * target.omega_hi())).epsilon(1e-12));

  const auto fn = kappa_fn(set);
  const auto below = eval_dispersion(fn, kTissue, make_log_grid(omega1 / 5e4, omega1 / 500.0, 12));
  const auto above = eval_dispersion(fn, kTissue, make_log_grid(omega1 * 500.0, omega1 * 5e4, 12));
  CHECK(std::abs(loglog_slope(below, below.grid.front(), below.grid.back()) - 2.0) <= 0.05);
  CHECK(std::abs(loglog_slope(above, above.grid.front(), above.grid.back()) - 0.0) <= 0.05);
}

TEST_CASE("degenerate exponents build an impulse outside the band") {
  // an impulse a margin outside the band supports only weak attenuation at
  // the reference; 0.01 Np/m is comfortably attainable on both sides
  const Medium medium = kTissue;
  const PowerLawTarget omega_sq(2.0, 0.01, hz_to_angular(1e6), hz_to_angular(1e5),
                                hz_to_angular(30e6));
  const RelaxationSet high = build_relaxation_set(omega_sq, medium, 3, DensityMode::power_law);
  REQUIRE(high.size() == 1);
  CHECK(high.mechanisms()[0].omega_nu >= 100.0 * omega_sq.omega_hi());
  const FrequencyGrid grid = make_log_grid(omega_sq.omega_lo(), omega_sq.omega_hi(), 40);
  const auto curve = eval_dispersion(kappa_fn(high), medium, grid);
  CHECK(std::abs(loglog_slope(curve, grid.front(), grid.back()) - 2.0) <= 0.02);

  const PowerLawTarget flat(0.0, 0.01, hz_to_angular(1e6), hz_to_angular(1e5),
                            hz_to_angular(30e6));
  const RelaxationSet low = build_relaxation_set(flat, medium, 2, DensityMode::zener_exact);
  REQUIRE(low.size() == 1);
  CHECK(low.mechanisms()[0].omega_nu <= omega_sq.omega_lo() / 100.0);
  const auto fcurve = eval_dispersion(kappa_fn(low), medium, grid);
  CHECK(std::abs(loglog_slope(fcurve, grid.front(), grid.back()) - 0.0) <= 0.02);
}

TEST_CASE("small-attenuation sum tracks the exact attenuation") {
  const PowerLawTarget target = table1_target();
  const RelaxationSet set =
      build_relaxation_set(target, kTissue, 3, DensityMode::power_law);
  const FrequencyGrid grid = make_log_grid(target.omega_lo(), target.omega_hi(), 60);
  for (double omega : grid.samples()) {
    const auto kappa = discrete_compressibility(set, omega);
    if (std::abs(kappa.imag()) / kappa.real() > 2e-3) continue;
    const double approx = small_attenuation_attenuation(set, kTissue, omega);
    const double exact = exact_attenuation(set, kTissue, omega);
    CHECK(std::abs(approx - exact) / exact <= 0.01);
  }
}

TEST_CASE("zener-exact sets converge to the band-limited continuum") {
  const PowerLawTarget target = table1_target();
  const Band band{target.omega_lo(), target.omega_hi()};
  const double omega_mid = std::sqrt(band.omega_lo * band.omega_hi);

  double previous_gap = HUGE_VAL;
  for (std::size_t n : {8, 16, 32, 64}) {
    const RelaxationSet set =
        build_relaxation_set(target, kTissue, n, DensityMode::zener_exact);
    const auto& prov = *set.provenance();
    REQUIRE(prov.zener.has_value());
    const auto continuum = ContinuousDistribution::zener(*prov.zener, band,
                                                         prov.calibration_scale);
    const auto k_discrete = discrete_compressibility(set, omega_mid);
    const auto k_continuum = continuum_compressibility(continuum, omega_mid, 1e-10);
    const double gap = std::abs(k_discrete - k_continuum) / std::abs(k_continuum);
    CHECK(gap < previous_gap);
    previous_gap = gap;
  }
  CHECK(previous_gap <= 0.005);
}

TEST_CASE("physicality: phase velocity finite and rising toward high frequency") {
  const PowerLawTarget target = table1_target();
  const RelaxationSet set =
      build_relaxation_set(target, kTissue, 3, DensityMode::power_law);
  const FrequencyGrid grid =
      make_log_grid(target.omega_lo() / 100.0, target.omega_hi() * 100.0, 120);
  const auto curve = eval_dispersion(kappa_fn(set), kTissue, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::isfinite(curve.phase_velocity[i]));
    CHECK(curve.phase_velocity[i] > 0.0);
    if (i > 0)
      CHECK(curve.phase_velocity[i] >= curve.phase_velocity[i - 1] * (1.0 - 1e-12));
  }
  // strictly negative imaginary part and positive attenuation in-band
  for (double omega : grid.samples()) {
    CHECK(discrete_compressibility(set, omega).imag() < 0.0);
  }
  for (double a : curve.attenuation) CHECK(a > 0.0);
}

TEST_CASE("realized tau_epsilon is reported for zener-mode fits") {
  const PowerLawTarget target = table1_target();
  const RelaxationSet set =
      build_relaxation_set(target, kTissue, 3, DensityMode::zener_exact);
  const auto& prov = *set.provenance();
  REQUIRE(prov.zener.has_value());
  if (prov.calibration_scale <= 1.0) {
    REQUIRE(prov.tau_epsilon_realized.has_value());
    const double te = *prov.tau_epsilon_realized;
    CHECK(te >= 0.0);
    CHECK(te < prov.zener->tau_sigma());
    // re-sampling kappa_prime with the realized tau_epsilon reproduces the
    // calibrated densities
    const ZenerParams realized = ZenerParams::symmetric(
        prov.zener->alpha(), prov.zener->tau_sigma(), te, prov.zener->kappa0());
    for (const auto& m : set.mechanisms())
      CHECK(kappa_prime(realized, m.omega_nu) ==
            doctest::Approx(m.density).epsilon(1e-9));
  }
}
