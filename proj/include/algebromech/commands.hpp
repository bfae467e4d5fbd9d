#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "algebromech/catalog.hpp"
#include "algebromech/config.hpp"

namespace algebromech::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kSolverError = 2,
  kToleranceExceeded = 3,
  kChartExit = 4,
};

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// Integrates the configured system and writes the trajectory CSV and report.
int cmd_run(const RunConfig& config, std::ostream& log);

/// Runs reduce_compare, hp_reduce_compare or routh_compare and writes the report.
int cmd_compare(const RunConfig& config, std::ostream& log);

/// Samples structure identities and gradient consistency of a catalog system
/// and prints the residual table. Returns kOk iff every residual is under its
/// threshold.
int cmd_check(const std::string& system, const catalog::Params& params, std::uint64_t seed, int samples,
              std::ostream& out);

/// As cmd_check for an already-built system (used for custom fixtures).
int check_system(const catalog::SystemBundle& system, std::uint64_t seed, int samples, std::ostream& out);

int cmd_list(std::ostream& out);

/// Reads a config file and dispatches to cmd_run or cmd_compare, mapping
/// library errors to exit codes.
int run_config_file(const std::filesystem::path& path, bool compare, std::ostream& log);

}  // namespace algebromech::cli
