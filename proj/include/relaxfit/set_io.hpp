#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "relaxfit/discrete.hpp"

namespace relaxfit {

// Set file format, lossless for doubles (17 significant digits):
//   kappa0 <value> provenance <hex64>
//   <nu> <omega_nu> <density> <step> <weight>
//   ...
// Loading also accepts bare "<omega_nu> <weight>" pair lines (literature
// sets); those need a kappa0 fallback and get step = 1.
void write_relaxation_set(std::ostream& out, const RelaxationSet& set);
RelaxationSet read_relaxation_set(std::istream& in, const std::string& source_name,
                                  std::optional<double> kappa0_fallback = std::nullopt);

void save_relaxation_set(const std::string& path, const RelaxationSet& set);
RelaxationSet load_relaxation_set(const std::string& path,
                                  std::optional<double> kappa0_fallback = std::nullopt);

std::uint64_t provenance_hash(const Provenance& provenance);

// Write-temp-then-rename; the destination never holds partial output.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace relaxfit
