#pragma once

// JSON and CSV encodings: theories, Poincare transforms, verification
// reports and CHSH scenario files.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gptlab/composites.hpp"
#include "gptlab/gpt_core.hpp"
#include "gptlab/minkowski.hpp"
#include "gptlab/report.hpp"

namespace gptlab::io {

using Json = nlohmann::ordered_json;

/// {name, d, convention, states:{kind, vertices | ball}, effects:{kind, generators | ball}, reversibles}
/// with matrices as row-major nested arrays.
Json theory_to_json(const TheorySpec& theory);
/// Inverse of theory_to_json; runs validate_theory on the result.
TheorySpec theory_from_json(const Json& j);
/// Pretty-printed JSON document of a registry theory.
std::string export_theory(const std::string& name);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {a, lambda}
Json transform_to_json(const spacetime::PoincareTransform& p);
Json transform_log(const std::vector<spacetime::PoincareTransform>& log);

/// {check, anchor, samples, worst_deviation, tolerance, pass}
Json report_to_json(const CheckReport& r);

/// CSV with a header row; fields containing commas or quotes are quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t width_;
};

/// Shortest round-tripping decimal form of a double.
std::string format_double(double v);

/// One CHSH scenario from a scenario file.
struct ChshScenarioSpec {
  std::string id;
  std::string local_a;
  std::string local_b;
  /// Binary measurements per side as (plus, minus) indices into the
  /// extremal effects; minus = -1 means the complement u - plus.
  std::vector<std::pair<int, int>> measurements_a;
  std::vector<std::pair<int, int>> measurements_b;
  /// Explicit joint vector; when absent CHSH is maximized over the max tensor product.
  std::optional<std::vector<double>> joint;
  /// "auto" (exact when both locals have rational frames), "exact" or "floating".
  std::string arithmetic = "auto";
  int ball_resolution = 0;
};

ChshScenarioSpec scenario_from_json(const Json& j);
/// Either a single scenario object or {"scenarios": [...]}.
std::vector<ChshScenarioSpec> scenarios_from_json(const Json& j);

struct ChshScenarioResult {
  std::string id;
  std::string local_a;
  std::string local_b;
  double chsh = 0.0;
  std::string chsh_exact;
  std::string verdict;
  bool in_max_tensor = false;
  bool no_signalling = false;
  std::size_t lp_count = 0;
};

ChshScenarioResult run_scenario(const ChshScenarioSpec& spec);

/// Column names of the CHSH CSV output.
std::vector<std::string> chsh_csv_header();
std::vector<std::string> chsh_csv_row(const ChshScenarioResult& r);
Json chsh_result_to_json(const ChshScenarioResult& r);

}  // namespace gptlab::io
