#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gptlab {

/// Seeded source for every random draw in the library and its checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double normal();
  Eigen::VectorXd gaussian_vector(int n);
  Eigen::VectorXd unit_vector(int n);
  /// Point uniformly distributed in the closed unit n-ball.
  Eigen::VectorXd ball_point(int n);
  /// Haar-distributed element of SO(n): QR of a Gaussian matrix with the
  /// sign and determinant fixed.
  Eigen::MatrixXd rotation(int n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Rotation by `angle` in the (i, j) coordinate plane of R^n.
Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle);

/// Deterministic near-uniform points on the unit sphere S^{n-1}.
/// n=1: {+1, -1}; n=2: equally spaced; n=3: Fibonacci lattice; n>3: seeded
/// Gaussian directions.
std::vector<Eigen::VectorXd> sphere_points(int n, int count);

/// Rotation in SO(n) taking unit `from` to unit `to`, built from two
/// Householder reflections. Requires n >= 2 unless from == to.
Eigen::MatrixXd rotation_between(const Eigen::VectorXd& from, const Eigen::VectorXd& to);

}  // namespace gptlab
