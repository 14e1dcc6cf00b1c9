#pragma once

// Example theories: classical simplices, regular polygons, Euclidean balls
// (d = 3 is the qubit Bloch ball) and box world.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gptlab/gpt_core.hpp"
#include "gptlab/sampling.hpp"

namespace gptlab::zoo {

struct PolygonParams {
  int N = 0;
  /// sqrt(sec(pi / N)); > 1 for finite N, -> 1 as N grows.
  double radius = 0.0;
  /// 2 pi / N
  double angle = 0.0;

  static PolygonParams make(int N);
};

struct BlochVector {
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
};

/// Classical system with N+1 outcomes: a regular N-simplex of states with
/// circumradius 1, extremal effects eps_i(zeta_j) = delta_ij.
TheorySpec classical_simplex(int N);

/// The N = 1 simplex with the reflection diag(1, -1) as its only reversible map.
TheorySpec classical_bit();

TheorySpec polygon_theory(int N);
GptVector polygon_state(int N, int i);
/// Extremal effect eps_i (even-N or odd-N formula as appropriate).
GptVector polygon_effect(int N, int i);
/// u - eps_i; for even N this is eps_{i + N/2}.
GptVector polygon_complement(int N, int i);
/// block-diag(1, planar rotation by (j mod N) * 2 pi / N).
LinearMap polygon_rotation(int N, int j);

TheorySpec euclidean_ball(int d);
/// (1/2)(1, v) for unit v.
GptVector ball_effect(const Vector& unit_direction);
/// block-diag(1, O) for O in SO(d).
LinearMap ball_reversible(const Matrix& rotation);
/// Rotation of the ball taking pure state (1, from) to (1, to).
LinearMap ball_rotation_to(const Vector& from, const Vector& to);

GptVector density_to_gpt(const BlochVector& bloch, double tol = kDefaultTol);

/// Indices into `local.effects.extremal()` forming one binary measurement.
struct BinaryMeasurementIndices {
  int plus = 0;
  int minus = 0;
};

/// Half of a PR box: the square polygon with E = E_norm and its two binary
/// measurements {eps_0, eps_2} and {eps_1, eps_3}.
struct BoxWorldPair {
  TheorySpec local;
  std::array<BinaryMeasurementIndices, 2> measurements;
};

BoxWorldPair box_world_pair();

/// "bit", "simplex:N", "polygon:N", "ball:d", "boxworld".
TheorySpec by_name(const std::string& name);
bool is_registered(const std::string& name);

/// Hausdorff distance between the polygon state set and the unit disk.
/// The disk side is probed at `probes` equally spaced boundary directions.
double polygon_disk_hausdorff(int N, int probes = 4096);

}  // namespace gptlab::zoo
