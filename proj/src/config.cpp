#include "relaxfit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "relaxfit/errors.hpp"

namespace relaxfit {

Medium JobConfig::medium() const { return Medium::from_speed_density(c0, rho0); }

PowerLawTarget JobConfig::target() const {
  const double alpha_np = alpha_ref_unit == AlphaUnit::db_per_cm_at_ref
                              ? db_per_cm_to_np_per_m(alpha_ref)
                              : alpha_ref;
  return PowerLawTarget(eta, alpha_np, hz_to_angular(f_ref), hz_to_angular(f_lo),
                        hz_to_angular(f_hi));
}

double JobConfig::grid_omega_lo() const {
  return hz_to_angular(grid_f_lo > 0.0 ? grid_f_lo : f_lo);
}

double JobConfig::grid_omega_hi() const {
  return hz_to_angular(grid_f_hi > 0.0 ? grid_f_hi : f_hi);
}

FrequencyGrid JobConfig::output_grid() const {
  return make_log_grid(grid_omega_lo(), grid_omega_hi(), grid_points);
}

namespace {

struct Entry {
  std::string value;
  int line;
};
using BlockMap = std::map<std::string, std::map<std::string, Entry>>;

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << line << ": " << msg;
  throw config_error(os.str());
}

double parse_number(const std::string& source, const Entry& e, const std::string& key) {
  const char* text = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(text, &end);
  if (end == text || *end != '\0')
    fail(source, e.line, "key '" + key + "': not a number: '" + e.value + "'");
  return v;
}

std::size_t parse_count(const std::string& source, const Entry& e,
                        const std::string& key) {
  const double v = parse_number(source, e, key);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    fail(source, e.line, "key '" + key + "': not a non-negative integer");
  return static_cast<std::size_t>(v);
}

const std::set<std::string> kKnownKeys[] = {
    {"c0", "rho0"},
    {"eta", "alpha_ref", "alpha_ref_unit", "f_ref", "f_lo", "f_hi"},
    {"n_mechanisms", "mode", "tau_sigma_margin"},
    {"grid_points", "grid_f_lo", "grid_f_hi", "set_file", "csv_file"},
};
const char* kBlockNames[] = {"medium", "target", "model", "output"};

int block_index(const std::string& name) {
  for (int i = 0; i < 4; ++i)
    if (name == kBlockNames[i]) return i;
  return -1;
}

}  // namespace

JobConfig parse_job_config(std::istream& in, const std::string& source_name) {
  BlockMap blocks;
  std::string line;
  std::string current_block;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);

    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;

    if (first == "}") {
      std::string rest;
      if (ls >> rest) fail(source_name, line_no, "trailing text after '}'");
      if (current_block.empty()) fail(source_name, line_no, "unmatched '}'");
      current_block.clear();
      continue;
    }

    if (current_block.empty()) {
      const int bi = block_index(first);
      if (bi < 0) fail(source_name, line_no, "unknown block '" + first + "'");
      std::string brace;
      if (!(ls >> brace) || brace != "{")
        fail(source_name, line_no, "expected '{' after block name");
      std::string rest;
      if (ls >> rest) fail(source_name, line_no, "trailing text after '{'");
      if (blocks.count(first)) fail(source_name, line_no, "duplicate block '" + first + "'");
      blocks[first];
      current_block = first;
      continue;
    }

    // key value
    std::string value, rest;
    if (!(ls >> value)) fail(source_name, line_no, "key '" + first + "' has no value");
    if (ls >> rest) fail(source_name, line_no, "trailing text after value of '" + first + "'");
    const int bi = block_index(current_block);
    if (!kKnownKeys[bi].count(first))
      fail(source_name, line_no,
           "unknown key '" + first + "' in block '" + current_block + "'");
    auto& block = blocks[current_block];
    if (block.count(first)) fail(source_name, line_no, "duplicate key '" + first + "'");
    block[first] = Entry{value, line_no};
  }
  if (!current_block.empty())
    fail(source_name, line_no, "block '" + current_block + "' not closed");

  for (const char* required : {"medium", "target", "model"})
    if (!blocks.count(required))
      throw config_error(source_name + ": missing block '" + std::string(required) + "'");

  const auto require = [&](const std::string& block, const std::string& key) -> const Entry& {
    const auto& b = blocks.at(block);
    const auto it = b.find(key);
    if (it == b.end())
      throw config_error(source_name + ": block '" + block + "' is missing key '" + key + "'");
    return it->second;
  };

  JobConfig cfg;
  cfg.c0 = parse_number(source_name, require("medium", "c0"), "c0");
  cfg.rho0 = parse_number(source_name, require("medium", "rho0"), "rho0");

  cfg.eta = parse_number(source_name, require("target", "eta"), "eta");
  cfg.alpha_ref = parse_number(source_name, require("target", "alpha_ref"), "alpha_ref");
  {
    const Entry& unit = require("target", "alpha_ref_unit");
    if (unit.value == "np_per_m")
      cfg.alpha_ref_unit = JobConfig::AlphaUnit::np_per_m;
    else if (unit.value == "db_per_cm_at_ref")
      cfg.alpha_ref_unit = JobConfig::AlphaUnit::db_per_cm_at_ref;
    else
      fail(source_name, unit.line,
           "alpha_ref_unit must be 'np_per_m' or 'db_per_cm_at_ref'");
  }
  cfg.f_ref = parse_number(source_name, require("target", "f_ref"), "f_ref");
  cfg.f_lo = parse_number(source_name, require("target", "f_lo"), "f_lo");
  cfg.f_hi = parse_number(source_name, require("target", "f_hi"), "f_hi");

  cfg.n_mechanisms = parse_count(source_name, require("model", "n_mechanisms"), "n_mechanisms");
  if (cfg.n_mechanisms == 0)
    throw config_error(source_name + ": n_mechanisms must be at least 1");
  {
    const Entry& mode = require("model", "mode");
    if (mode.value == "zener_exact")
      cfg.mode = DensityMode::zener_exact;
    else if (mode.value == "power_law")
      cfg.mode = DensityMode::power_law;
    else
      fail(source_name, mode.line, "mode must be 'zener_exact' or 'power_law'");
  }
  if (blocks.at("model").count("tau_sigma_margin"))
    cfg.tau_sigma_margin = parse_number(
        source_name, blocks.at("model").at("tau_sigma_margin"), "tau_sigma_margin");

  if (blocks.count("output")) {
    const auto& out = blocks.at("output");
    if (out.count("grid_points"))
      cfg.grid_points = parse_count(source_name, out.at("grid_points"), "grid_points");
    if (out.count("grid_f_lo"))
      cfg.grid_f_lo = parse_number(source_name, out.at("grid_f_lo"), "grid_f_lo");
    if (out.count("grid_f_hi"))
      cfg.grid_f_hi = parse_number(source_name, out.at("grid_f_hi"), "grid_f_hi");
    if (out.count("set_file")) cfg.set_file = out.at("set_file").value;
    if (out.count("csv_file")) cfg.csv_file = out.at("csv_file").value;
  }

  // Validate through the typed constructors so the diagnostics name the
  // violated invariant rather than failing later mid-command.
  cfg.medium();
  cfg.target();
  if (cfg.grid_points < 2)
    throw config_error(source_name + ": grid_points must be at least 2");
  if (!(cfg.grid_omega_lo() < cfg.grid_omega_hi()))
    throw config_error(source_name + ": output grid band is empty");
  return cfg;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  return parse_job_config(in, path);
}

}  // namespace relaxfit
