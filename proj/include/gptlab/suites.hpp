#pragma once

// Verification suites shared by the command-line tool and the test binaries.
// Every suite is deterministic in its configuration and seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gptlab/report.hpp"

namespace gptlab::suites {

struct SuiteConfig {
  int n = 3;
  double mass = 1.0;
  std::uint64_t seed = 20240607;
  /// Random draws per sampled check.
  int samples = 100;
  /// Overrides every per-check tolerance when set.
  std::optional<double> tol;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckReport> checks;
  bool pass() const { return all_pass(checks); }
};

/// Interval and mass-shell invariance, group law of Poincare composition,
/// standard boosts.
SuiteResult minkowski_checks(const SuiteConfig& cfg);

/// Little-group elements: stabilizer property, zero translation part,
/// reduction for pure rotations, Wigner rotations in SO(n), composition law,
/// Thomas-Wigner angle of perpendicular boosts.
SuiteResult little_group_checks(const SuiteConfig& cfg);

/// Probability invariance for ball-shaped internal spaces, the momentum
/// Kronecker pairing, the detector sphere, a deliberately inconsistent
/// representation, and orbits of pure ball states.
SuiteResult invariance_checks(const SuiteConfig& cfg);

/// Discrete toy spacetime acting on the polygon of order N by T_k.
SuiteResult toy_spacetime_checks(int N, int k, std::optional<double> tol = std::nullopt);

/// Regression angle of the Wigner rotation for perpendicular boosts with
/// gamma_1 = gamma_2 = sqrt(2), as computed by the library.
double perpendicular_boost_angle(int n);

}  // namespace gptlab::suites
