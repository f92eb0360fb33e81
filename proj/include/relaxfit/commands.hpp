#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace relaxfit {

// Exit codes shared by the commands and the CLI front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

struct CommandOptions {
  std::string config_path;
  std::string set_path;   // eval: input set; compare: external set
  std::string out_path;   // fit: set file; eval: CSV file
  std::vector<std::size_t> n_list;  // sweep
  bool quiet = false;
};

int cmd_fit(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_eval(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_compare(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace relaxfit
