#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace gptlab {

/// Outcome of one verification: the largest deviation seen over `samples`
/// evaluations, compared against a tolerance.
struct CheckReport {
  std::string check;
  /// Short statement of the property being verified.
  std::string anchor;
  std::size_t samples = 0;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;

  CheckReport() = default;
  CheckReport(std::string name, std::string claim, double tol)
      : check(std::move(name)), anchor(std::move(claim)), tolerance(tol) {}

  /// Records one sample; NaN deviations fail the check.
  void observe(double deviation) {
    ++samples;
    if (std::isnan(deviation)) {
      worst_deviation = deviation;
      pass = false;
      return;
    }
    if (!std::isnan(worst_deviation)) worst_deviation = std::max(worst_deviation, deviation);
    if (deviation > tolerance) pass = false;
  }
  /// Records a boolean sample (deviation 0 or 1).
  void require(bool ok) { observe(ok ? 0.0 : 1.0); }
  /// Folds another report's samples into this one against this tolerance.
  void merge_from(const CheckReport& other) {
    if (other.samples == 0) return;
    const std::size_t before = samples;
    observe(other.worst_deviation);
    if (!other.pass && !std::isnan(other.worst_deviation) && other.worst_deviation <= tolerance) pass = false;
    samples = before + other.samples;
  }
};

inline bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

}  // namespace gptlab
