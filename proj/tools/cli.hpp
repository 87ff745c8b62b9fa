#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "dirac/potential.hpp"
#include "dirac/spectrum.hpp"

namespace dirac::cli {

enum class Command { Spectrum, SweepK, SweepV0, State, Landau, Verify };
enum class Format { Csv, Json };

Command parse_command(const std::string& name);
const char* to_string(Command command) noexcept;

/// "lo:hi:step"; throws ConfigError when malformed or step <= 0.
ParamRange parse_range(const std::string& text);

/// Either a plain number or a range, kept as text until the command is known.
using Value = std::string;

struct RunConfig {
  Command command = Command::Spectrum;
  std::optional<Potential1D> potential;
  std::optional<Value> k;
  std::optional<Value> v0;
  double half_width = 1.0;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<int> level;
  int max_level = 5;
  std::optional<std::string> output;
  Format format = Format::Csv;
  unsigned workers = 1;

  /// Throws ConfigError when a parameter required by `command` is missing.
  void validate() const;
};

/// Fields mirror the long flag names; numbers may also be given as strings.
RunConfig config_from_json(const nlohmann::json& j);

/// Executes the command. Data goes to `out` (or to the configured file),
/// diagnostics to `err`. Returns 0 on success, 1 when a verify check fails,
/// 2 on configuration or evaluation errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dirac::cli
