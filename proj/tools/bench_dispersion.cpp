// Compares the serial reference dispersion evaluation against the OpenMP
// kernel on the two model families, and checks that they agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "relaxfit/analysis.hpp"

using namespace relaxfit;

namespace {

double seconds_of(const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool identical(const DispersionCurve& a, const DispersionCurve& b) {
  for (std::size_t i = 0; i < a.grid.size(); ++i)
    if (a.attenuation[i] != b.attenuation[i] ||
        a.phase_velocity[i] != b.phase_velocity[i])
      return false;
  return true;
}

void bench(const char* name, const KappaFn& fn, const Medium& medium,
           const FrequencyGrid& grid, int repeats) {
  DispersionCurve serial = eval_dispersion_serial(fn, medium, grid);
  DispersionCurve parallel = eval_dispersion(fn, medium, grid);

  double t_serial = 1e300, t_parallel = 1e300;
  for (int r = 0; r < repeats; ++r) {
    t_serial = std::min(t_serial, seconds_of([&] {
                          serial = eval_dispersion_serial(fn, medium, grid);
                        }));
    t_parallel = std::min(t_parallel, seconds_of([&] {
                            parallel = eval_dispersion(fn, medium, grid);
                          }));
  }
  std::printf("%-28s %8zu samples   serial %8.1f ms   parallel %8.1f ms   "
              "speedup %.2fx   bitwise %s\n",
              name, grid.size(), t_serial * 1e3, t_parallel * 1e3,
              t_serial / t_parallel, identical(serial, parallel) ? "ok" : "MISMATCH");
}

}  // namespace

int main() {
  const Medium medium = Medium::from_speed_density(1540.0, 1050.0);
  const PowerLawTarget target(1.1, db_per_cm_to_np_per_m(0.3),
                              hz_to_angular(1e6), hz_to_angular(1e5),
                              hz_to_angular(30e6));

  const RelaxationSet set =
      build_relaxation_set(target, medium, 64, DensityMode::zener_exact);
  bench("discrete, 64 mechanisms", kappa_fn(set), medium,
        make_log_grid(hz_to_angular(1e4), hz_to_angular(3e8), 200000), 3);

  const auto& prov = *set.provenance();
  const ContinuousDistribution banded = ContinuousDistribution::zener(
      *prov.zener, Band{target.omega_lo(), target.omega_hi()},
      prov.calibration_scale);
  bench("continuum, band-limited", kappa_fn(banded), medium,
        make_log_grid(hz_to_angular(1e4), hz_to_angular(3e8), 2000), 3);

  const ContinuousDistribution full = ContinuousDistribution::zener(
      ZenerParams::symmetric(0.3, 1e-7, 2.5e-8, medium.kappa0()), Band::full());
  bench("continuum, full axis", kappa_fn(full), medium,
        make_log_grid(hz_to_angular(1e4), hz_to_angular(3e8), 400), 3);
  return 0;
}
