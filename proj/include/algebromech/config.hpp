#pragma once

// Line-oriented run configuration:
//
//   # comment
//   [system]
//   name = rigid_body
//   I1 = 1            # every other key is a numeric system parameter
//   [initial]
//   q =               # whitespace-separated lists; an empty value is a 0-vector
//   xi = 1 1 1
//   [integrate]
//   t_final = 10
//   dt = 1e-3
//   method = rk4      # rk4 | implicit_midpoint
//   formulation = elp # elp | hp
//   seed = 0
//   [output]
//   trajectory = out.csv
//   report = out.report
//   [compare]         # only for `compare`
//   kind = reduce     # reduce | hp_reduce | routh
//   morphism = cyclic_quotient
//   tolerance = 1e-6
//   momentum = 1      # routh only
//   n_cyclic = 1      # routh only

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algebromech/catalog.hpp"
#include "algebromech/errors.hpp"
#include "algebromech/time_stepping.hpp"

namespace algebromech::cli {

/// Configuration error carrying the offending line (0 when not tied to one).
class ConfigError : public InputError {
public:
  ConfigError(int line, const std::string& key, const std::string& message);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

private:
  int line_;
  std::string key_;
};

enum class Formulation { elp, hp };
enum class CompareKind { reduce, hp_reduce, routh };

std::string_view to_string(Formulation f);
std::string_view to_string(CompareKind k);

struct CompareSection {
  CompareKind kind = CompareKind::reduce;
  std::string morphism;  // reduce / hp_reduce
  double tolerance = 1e-6;
  std::optional<std::vector<double>> momentum;  // routh; defaults to dL/dthetadot(s0)
  int n_cyclic = 1;

  bool operator==(const CompareSection&) const = default;
};

struct RunConfig {
  std::string system;
  catalog::Params params;
  // Initial state; an absent entry selects the catalog default.
  std::optional<std::vector<double>> q, xi, v, p;
  double t_final = 0.0;
  double dt = 0.0;
  Method method = Method::rk4;
  Formulation formulation = Formulation::elp;
  std::uint64_t seed = 0;
  std::string trajectory_path;
  std::string report_path;
  std::optional<CompareSection> compare;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a configuration, filling defaults. Vector lengths are
/// checked against the catalog system's dimensions.
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config for valid configs (every field written explicitly).
std::string render_config(const RunConfig& config);

/// 17 significant digits; parsing the text back reproduces the double exactly.
std::string format_double(double value);

}  // namespace algebromech::cli
