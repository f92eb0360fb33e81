#pragma once

#include <stdexcept>
#include <string>

namespace relaxfit {

// Invalid input: bad config values, malformed files, violated preconditions.
// The CLI maps these to exit code 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during evaluation or fitting. CLI exit code 3.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature did not converge within its refinement budget.
// Carries the error estimate that was actually achieved.
class quadrature_error : public numeric_error {
public:
  quadrature_error(const std::string& what, double achieved_error)
      : numeric_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

private:
  double achieved_error_;
};

// Root bracketing or refinement failed during calibration.
class calibration_error : public numeric_error {
public:
  explicit calibration_error(const std::string& what) : numeric_error(what) {}
};

// The requested attenuation cannot be met while keeping the summed
// compressibility contributions below kappa0. Carries the supremum that
// is attainable.
class physicality_error : public numeric_error {
public:
  physicality_error(const std::string& what, double max_attainable_alpha_ref)
      : numeric_error(what), max_attainable_(max_attainable_alpha_ref) {}
  double max_attainable_alpha_ref() const { return max_attainable_; }

private:
  double max_attainable_;
};

}  // namespace relaxfit
