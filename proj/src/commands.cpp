#include "relaxfit/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "relaxfit/analysis.hpp"
#include "relaxfit/config.hpp"
#include "relaxfit/errors.hpp"
#include "relaxfit/set_io.hpp"

namespace relaxfit {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericError;
  }
}

std::string fmt(const char* format, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void print_set_table(std::ostream& out, const RelaxationSet& set) {
  out << "  nu   f_nu_MHz       omega_nu_rad_s     density_TPa_s      step_rad_s"
         "         weight_TPa\n";
  int nu = 1;
  for (const auto& m : set.mechanisms()) {
    char line[160];
    std::snprintf(line, sizeof line, "  %2d   %-12.6g   %-15.9e   %-15.9e   %-15.9e   %-15.9e\n",
                  nu++, angular_to_hz(m.omega_nu) / 1e6, m.omega_nu,
                  m.density * 1e12, m.step, m.weight * 1e12);
    out << line;
  }
}

void print_fit_summary(std::ostream& out, const RelaxationSet& set,
                       const FitReport& report, double raw_max_rel_diff) {
  if (set.provenance()) {
    const auto& prov = *set.provenance();
    out << "calibration scale: " << fmt("%.9e", prov.calibration_scale) << "\n";
    if (prov.zener) {
      if (prov.tau_epsilon_realized)
        out << "realized tau_epsilon: " << fmt("%.9e", *prov.tau_epsilon_realized)
            << " s\n";
      else
        out << "realized tau_epsilon: not representable (scale exceeds the Zener "
               "range); weights remain valid\n";
    }
  }
  out << "max rel diff (normalized): " << fmt("%.6f", report.max_rel_diff)
      << "  (normalization scale " << fmt("%.9e", report.normalization_scale)
      << ")\n";
  out << "max rel diff (raw): " << fmt("%.6f", raw_max_rel_diff) << "\n";
}

struct EvaluatedFit {
  RelaxationSet set;
  DispersionCurve curve;
  FitReport report;
  double raw_max_rel_diff;
};

EvaluatedFit evaluate_fit(const JobConfig& cfg, const RelaxationSet& set) {
  const Medium medium = cfg.medium();
  const PowerLawTarget target = cfg.target();
  const FrequencyGrid grid = cfg.output_grid();
  DispersionCurve curve = eval_dispersion(kappa_fn(set), medium, grid);
  FitReport report =
      normalize_to_target(curve, target, cfg.grid_omega_lo(), cfg.grid_omega_hi());
  const double raw = max_rel_diff_unnormalized(curve, target, cfg.grid_omega_lo(),
                                               cfg.grid_omega_hi());
  return EvaluatedFit{set, std::move(curve), std::move(report), raw};
}

std::string curve_csv(const JobConfig& cfg, const DispersionCurve& curve,
                      double normalization_scale) {
  const PowerLawTarget target = cfg.target();
  std::ostringstream os;
  os << "f_Hz,omega_rad_s,alpha_np_per_m,alpha_db_per_cm,c_p_m_per_s,"
        "rel_diff,rel_diff_normalized\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double omega = curve.grid[i];
    const double alpha = curve.attenuation[i];
    const double g = alpha / target_attenuation(target, omega);
    char line[240];
    std::snprintf(line, sizeof line,
                  "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n",
                  angular_to_hz(omega), omega, alpha, np_per_m_to_db_per_cm(alpha),
                  curve.phase_velocity[i], g - 1.0,
                  normalization_scale * g - 1.0);
    os << line;
  }
  return os.str();
}

}  // namespace

int cmd_fit(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const JobConfig cfg = load_job_config(opt.config_path);
    const RelaxationSet set =
        build_relaxation_set(cfg.target(), cfg.medium(), cfg.n_mechanisms, cfg.mode,
                             cfg.tau_sigma_margin);
    const EvaluatedFit fit = evaluate_fit(cfg, set);

    std::string set_path = !opt.out_path.empty() ? opt.out_path
                           : !cfg.set_file.empty() ? cfg.set_file
                                                   : std::string("relaxation_set.txt");
    save_relaxation_set(set_path, set);

    if (!opt.quiet) {
      out << "fitted " << set.size() << " relaxation mechanism"
          << (set.size() == 1 ? "" : "s") << " (kappa0 "
          << fmt("%.9e", set.kappa0()) << " Pa^-1)\n";
      print_set_table(out, set);
      print_fit_summary(out, set, fit.report, fit.raw_max_rel_diff);
      out << "set file: " << set_path << "\n";
    }
    return kExitOk;
  });
}

int cmd_eval(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const JobConfig cfg = load_job_config(opt.config_path);
    const Medium medium = cfg.medium();
    const RelaxationSet set = load_relaxation_set(opt.set_path, medium.kappa0());
    const FrequencyGrid grid = cfg.output_grid();
    const DispersionCurve curve = eval_dispersion(kappa_fn(set), medium, grid);

    double scale = 1.0;
    try {
      scale = normalize_to_target(curve, cfg.target(), cfg.grid_omega_lo(),
                                  cfg.grid_omega_hi())
                  .normalization_scale;
    } catch (const numeric_error&) {
      if (!opt.quiet)
        err << "note: curve not normalizable against the target (non-positive "
               "attenuation); rel_diff_normalized uses scale 1\n";
    }

    std::string csv_path = !opt.out_path.empty() ? opt.out_path
                           : !cfg.csv_file.empty() ? cfg.csv_file
                                                   : std::string("curve.csv");
    atomic_write_file(csv_path, curve_csv(cfg, curve, scale));
    if (!opt.quiet)
      out << "wrote " << grid.size() << " samples to " << csv_path << "\n";
    return kExitOk;
  });
}

int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const JobConfig cfg = load_job_config(opt.config_path);
    if (opt.n_list.empty()) throw config_error("sweep: --n list is empty");

    std::vector<std::size_t> ns = opt.n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    out << "   n   max_rel_diff_normalized   max_rel_diff_raw\n";
    bool any_failed = false;
    bool monotone = true;
    double previous = -1.0;
    for (std::size_t n : ns) {
      try {
        const RelaxationSet set = build_relaxation_set(
            cfg.target(), cfg.medium(), n, cfg.mode, cfg.tau_sigma_margin);
        const EvaluatedFit fit = evaluate_fit(cfg, set);
        char line[120];
        std::snprintf(line, sizeof line, "  %2zu   %-23.6f   %-.6f\n", n,
                      fit.report.max_rel_diff, fit.raw_max_rel_diff);
        out << line;
        if (previous >= 0.0 && fit.report.max_rel_diff > previous) monotone = false;
        previous = fit.report.max_rel_diff;
      } catch (const numeric_error& e) {
        out << "  " << n << "   failed: " << e.what() << "\n";
        any_failed = true;
      }
    }
    if (!opt.quiet)
      out << "monotone improvement with n: " << (monotone ? "yes" : "no") << "\n";
    return any_failed ? kExitNumericError : kExitOk;
  });
}

int cmd_compare(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const JobConfig cfg = load_job_config(opt.config_path);
    const RelaxationSet fitted =
        build_relaxation_set(cfg.target(), cfg.medium(), cfg.n_mechanisms, cfg.mode,
                             cfg.tau_sigma_margin);
    const RelaxationSet external =
        load_relaxation_set(opt.set_path, cfg.medium().kappa0());

    const EvaluatedFit own = evaluate_fit(cfg, fitted);
    const EvaluatedFit theirs = evaluate_fit(cfg, external);

    out << "  set        mechanisms   max_rel_diff_normalized   max_rel_diff_raw\n";
    char line[160];
    std::snprintf(line, sizeof line, "  fitted     %-10zu   %-23.6f   %-.6f\n",
                  fitted.size(), own.report.max_rel_diff, own.raw_max_rel_diff);
    out << line;
    std::snprintf(line, sizeof line, "  external   %-10zu   %-23.6f   %-.6f\n",
                  external.size(), theirs.report.max_rel_diff,
                  theirs.raw_max_rel_diff);
    out << line;
    return kExitOk;
  });
}

}  // namespace relaxfit
