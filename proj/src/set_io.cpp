#include "relaxfit/set_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "relaxfit/errors.hpp"

namespace relaxfit {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double parse_field(const std::string& source, int line, const std::string& token) {
  const char* text = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(text, &end);
  if (end == text || *end != '\0')
    throw config_error(source + ":" + std::to_string(line) +
                       ": bad numeric field '" + token + "'");
  return v;
}

}  // namespace

std::uint64_t provenance_hash(const Provenance& p) {
  std::ostringstream os;
  os << static_cast<int>(p.mode) << ' ' << format_double(p.target.eta()) << ' '
     << format_double(p.target.alpha_ref()) << ' '
     << format_double(p.target.omega_ref()) << ' '
     << format_double(p.target.omega_lo()) << ' '
     << format_double(p.target.omega_hi()) << ' '
     << format_double(p.tau_sigma_margin) << ' '
     << format_double(p.calibration_scale);
  if (p.zener)
    os << ' ' << format_double(p.zener->alpha()) << ' '
       << format_double(p.zener->tau_sigma());
  return fnv1a(os.str());
}

void write_relaxation_set(std::ostream& out, const RelaxationSet& set) {
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016" PRIx64,
                set.provenance() ? provenance_hash(*set.provenance())
                                 : std::uint64_t{0});
  out << "kappa0 " << format_double(set.kappa0()) << " provenance " << hash << "\n";
  int nu = 1;
  for (const auto& m : set.mechanisms()) {
    out << nu++ << ' ' << format_double(m.omega_nu) << ' '
        << format_double(m.density) << ' ' << format_double(m.step) << ' '
        << format_double(m.weight) << "\n";
  }
}

RelaxationSet read_relaxation_set(std::istream& in, const std::string& source_name,
                                  std::optional<double> kappa0_fallback) {
  std::vector<RelaxationMechanism> mechanisms;
  std::optional<double> kappa0;
  std::string line;
  int line_no = 0;
  bool bare_pairs = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;

    if (tokens[0] == "kappa0") {
      if (kappa0 || !mechanisms.empty())
        throw config_error(source_name + ":" + std::to_string(line_no) +
                           ": misplaced header line");
      if (tokens.size() != 4 || tokens[2] != "provenance")
        throw config_error(source_name + ":" + std::to_string(line_no) +
                           ": malformed header, expected 'kappa0 <v> provenance <hash>'");
      kappa0 = parse_field(source_name, line_no, tokens[1]);
      continue;
    }

    if (tokens.size() == 2) {
      // omega_nu weight
      const double omega_nu = parse_field(source_name, line_no, tokens[0]);
      const double weight = parse_field(source_name, line_no, tokens[1]);
      mechanisms.push_back(RelaxationMechanism{omega_nu, weight, 1.0, weight});
      bare_pairs = true;
    } else if (tokens.size() == 5) {
      const double omega_nu = parse_field(source_name, line_no, tokens[1]);
      const double density = parse_field(source_name, line_no, tokens[2]);
      const double step = parse_field(source_name, line_no, tokens[3]);
      const double weight = parse_field(source_name, line_no, tokens[4]);
      mechanisms.push_back(RelaxationMechanism{omega_nu, density, step, weight});
    } else {
      throw config_error(source_name + ":" + std::to_string(line_no) +
                         ": expected 5 fields (nu omega density step weight) or 2 "
                         "(omega weight)");
    }
  }

  if (!kappa0) {
    if (!bare_pairs && mechanisms.empty())
      throw config_error(source_name + ": empty set file");
    if (!kappa0_fallback)
      throw config_error(source_name +
                         ": no kappa0 header and no fallback kappa0 available");
    kappa0 = *kappa0_fallback;
  }
  return RelaxationSet(std::move(mechanisms), *kappa0);
}

void save_relaxation_set(const std::string& path, const RelaxationSet& set) {
  std::ostringstream os;
  write_relaxation_set(os, set);
  atomic_write_file(path, os.str());
}

RelaxationSet load_relaxation_set(const std::string& path,
                                  std::optional<double> kappa0_fallback) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open set file: " + path);
  return read_relaxation_set(in, path, kappa0_fallback);
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open for writing: " + tmp);
    out << contents;
    out.flush();
    if (!out) throw config_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw config_error("cannot rename into place: " + path);
  }
}

}  // namespace relaxfit
