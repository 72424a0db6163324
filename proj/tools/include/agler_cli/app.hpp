#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agler/colligation.hpp"
#include "agler/sequences.hpp"
#include "agler/test_functions.hpp"
#include "agler_cli/json_io.hpp"

namespace agler::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kInputError = 2, kIndeterminate = 3 };

inline const std::vector<std::string> kCommands = {"analyze", "pick",    "grammian",
                                                   "carleson", "realize", "verify-theorem"};

/// Command-line surface; unset overrides fall back to the config file.
struct Options {
  std::string command;
  std::string config_path;  // "-" reads stdin
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> grid;
};

struct AnalysisConfig {
  std::string command;
  DomainTag domain = DomainTag::disc();
  TestFunctionFamily family = TestFunctionFamily::disc();
  PointConfig points{DomainTag::disc(), {}};
  std::optional<SequenceSpec> sequence;
  std::optional<ComplexVector> targets;
  std::optional<double> bound;  // "C"
  double c_max = 1e3;
  double tol = 1e-7;
  std::size_t n_samples = 8;
  std::uint64_t seed = 0;
  std::size_t grid_size = kDefaultGridSize;
  std::size_t max_iterations = 50000;
  std::size_t depth = 0;  // 0 means all points
  std::vector<std::size_t> truncations;
  std::optional<std::size_t> descriptor;
  std::optional<Colligation> colligation;
};

/// Validates command-specific fields; throws Error(ConfigError) naming the offending JSON pointer.
AnalysisConfig parse_config(const Json& config, const Options& options);

struct CommandOutput {
  int exit_code = kSuccess;
  Json report;
  std::string csv;  // empty when the command has no table
};

CommandOutput execute(const AnalysisConfig& config);

/// Reads the config, executes, and writes <command>.json / <command>.csv to
/// the out directory (or the JSON report to `out`). Returns the exit code.
int run(const Options& options, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace agler::cli
