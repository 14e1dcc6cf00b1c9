#pragma once

// Pure boosts in closed form and the Thomas-Wigner rotation they induce.
// Written against plain Eigen, independent of the library's factorization.

#include <cmath>

#include <Eigen/Dense>

namespace oracle {

/// Pure boost taking (m, 0) to (E, p) for mass m:
/// [[gamma, gamma v^T], [gamma v, I + (gamma - 1) v v^T / |v|^2]] with v = p / E.
inline Eigen::MatrixXd pure_boost(const Eigen::VectorXd& p, double m) {
  const int n = static_cast<int>(p.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n + 1, n + 1);
  const double pn = p.norm();
  if (pn == 0.0) return b;
  const double e = std::sqrt(m * m + pn * pn);
  const double gamma = e / m;
  const Eigen::VectorXd v = p / e;
  b(0, 0) = gamma;
  b.block(0, 1, 1, n) = gamma * v.transpose();
  b.block(1, 0, n, 1) = gamma * v;
  b.block(1, 1, n, n) += (gamma - 1.0) * v * v.transpose() / v.squaredNorm();
  return b;
}

/// B(L p)^-1 L B(p) for four-momentum p of mass m.
inline Eigen::MatrixXd wigner(const Eigen::MatrixXd& lambda, const Eigen::VectorXd& p4, double m) {
  const int n = static_cast<int>(p4.size()) - 1;
  const Eigen::VectorXd q4 = lambda * p4;
  return pure_boost(q4.tail(n), m).inverse() * lambda * pure_boost(p4.tail(n), m);
}

/// Rotation angle for boosts along two perpendicular axes with Lorentz
/// factors g1 and g2: cos(theta) = (g1 + g2) / (1 + g1 g2).
inline double perpendicular_thomas_angle(double g1, double g2) { return std::acos((g1 + g2) / (1.0 + g1 * g2)); }

}  // namespace oracle
