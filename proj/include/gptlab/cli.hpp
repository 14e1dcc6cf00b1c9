#pragma once

// Command-line front end: argument parsing and subcommand dispatch.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gptlab::cli {

struct RunConfig {
  /// zoo, chsh-scan, minkowski-checks, little-group-checks, invariance-checks,
  /// toy-spacetime or report.
  std::string subcommand;
  /// Theory names given after `zoo`.
  std::vector<std::string> names;
  int n = 3;
  double mass = 1.0;
  std::uint64_t seed = 20240607;
  std::optional<double> tol;
  int samples = 100;
  /// One name (used for both sides) or two.
  std::vector<std::string> locals;
  std::optional<std::string> scenario;
  int N = 5;
  std::optional<int> k;
  /// Empty means standard output.
  std::string out;
  /// json or csv; empty picks csv for chsh-scan and json otherwise.
  std::string format;
};

const std::vector<std::string>& subcommands();

/// Parses argv. On --help or a parse error returns nullopt after writing the
/// message; `exit_code` receives the status the process should end with.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code);

/// Executes the subcommand. Returns 0 iff every check passed and the output
/// was written; diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace gptlab::cli
