#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "relaxfit/core.hpp"
#include "relaxfit/discrete.hpp"

namespace relaxfit {

// Parsed job description. Frequencies arrive in Hz and attenuation in the
// declared unit; the accessors below convert to the internal angular/Np
// conventions. Parsing is strict: unknown or duplicate keys are rejected.
struct JobConfig {
  // medium
  double c0 = 0.0;
  double rho0 = 0.0;
  // target
  double eta = 0.0;
  double alpha_ref = 0.0;
  enum class AlphaUnit { np_per_m, db_per_cm_at_ref } alpha_ref_unit = AlphaUnit::np_per_m;
  double f_ref = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  // model
  std::size_t n_mechanisms = 0;
  DensityMode mode = DensityMode::power_law;
  double tau_sigma_margin = 1e3;
  // output
  std::size_t grid_points = 200;
  double grid_f_lo = 0.0;  // 0: default to the target band
  double grid_f_hi = 0.0;
  std::string set_file;
  std::string csv_file;

  Medium medium() const;
  PowerLawTarget target() const;
  FrequencyGrid output_grid() const;
  double grid_omega_lo() const;
  double grid_omega_hi() const;
};

// Line-oriented block format:
//   medium {
//     c0 1540
//     rho0 1050
//   }
//   ...
// '#' starts a comment.
JobConfig parse_job_config(std::istream& in, const std::string& source_name);
JobConfig load_job_config(const std::string& path);

}  // namespace relaxfit
