#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algebromech/commands.hpp"

namespace {

algebromech::catalog::Params parse_params(const std::vector<std::string>& items) {
  algebromech::catalog::Params params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--params", "expected key=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      params[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--params", "value of '" + item + "' is not a number");
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace algebromech::cli;
  CLI::App app{"Lagrangian mechanics on Lie algebroids: simulate, check and compare reduced flows"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Integrate a configured system; writes the trajectory CSV and report");
  run->add_option("config", config_path, "Configuration file")->required();

  auto* compare = app.add_subcommand("compare", "Compare full and reduced flows; writes a comparison report");
  compare->add_option("config", config_path, "Configuration file")->required();

  std::string system;
  std::vector<std::string> param_items;
  std::uint64_t seed = 0;
  int samples = 100;
  auto* check = app.add_subcommand("check", "Sample the algebroid identities and gradient consistency of a system");
  check->add_option("system", system, "Catalog system name")->required();
  check->add_option("--params", param_items, "Parameter overrides key=value");
  check->add_option("--seed", seed, "Sampling seed");
  check->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);

  app.add_subcommand("list", "List catalog systems and morphisms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (run->parsed()) return run_config_file(config_path, false, std::cerr);
  if (compare->parsed()) return run_config_file(config_path, true, std::cerr);
  if (check->parsed()) {
    algebromech::catalog::Params params;
    try {
      params = parse_params(param_items);
    } catch (const CLI::ValidationError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfigError;
    }
    return cmd_check(system, params, seed, samples, std::cout);
  }
  return cmd_list(std::cout);
}
