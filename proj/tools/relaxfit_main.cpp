#include <cstddef>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaxfit/commands.hpp"

namespace {

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      std::size_t consumed = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(item, &consumed);
      } catch (...) {
        throw CLI::ValidationError("--n", "not a count: '" + item + "'");
      }
      if (consumed != item.size())
        throw CLI::ValidationError("--n", "not a count: '" + item + "'");
      out.push_back(static_cast<std::size_t>(v));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxfit: discrete multiple-relaxation fits for power-law "
               "acoustic attenuation"};
  app.require_subcommand(1);

  relaxfit::CommandOptions opt;
  std::string n_list_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "job config file")->required();
    cmd->add_flag("--quiet", opt.quiet, "suppress progress output");
  };

  CLI::App* fit = app.add_subcommand("fit", "determine relaxation parameters");
  add_common(fit);
  fit->add_option("--out", opt.out_path, "set file to write");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a saved set to CSV");
  add_common(eval);
  eval->add_option("--set", opt.set_path, "set file to evaluate")->required();
  eval->add_option("--out", opt.out_path, "CSV file to write");

  CLI::App* sweep = app.add_subcommand("sweep", "fit a list of mechanism counts");
  add_common(sweep);
  sweep->add_option("--n", n_list_text, "comma-separated mechanism counts")->required();

  CLI::App* compare = app.add_subcommand("compare", "fit vs an external set");
  add_common(compare);
  compare->add_option("--set", opt.set_path, "external set file")->required();

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) opt.n_list = parse_n_list(n_list_text);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : relaxfit::kExitConfigError;
  }

  if (fit->parsed()) return relaxfit::cmd_fit(opt, std::cout, std::cerr);
  if (eval->parsed()) return relaxfit::cmd_eval(opt, std::cout, std::cerr);
  if (sweep->parsed()) return relaxfit::cmd_sweep(opt, std::cout, std::cerr);
  if (compare->parsed()) return relaxfit::cmd_compare(opt, std::cout, std::cerr);
  return relaxfit::kExitConfigError;
}
