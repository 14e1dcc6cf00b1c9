#include "gptlab/sampling.hpp"

#include <cmath>
#include <numbers>

#include "gptlab/errors.hpp"

namespace gptlab {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Sampler::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Eigen::VectorXd Sampler::gaussian_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Eigen::VectorXd Sampler::unit_vector(int n) {
  while (true) {
    Eigen::VectorXd v = gaussian_vector(n);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

Eigen::VectorXd Sampler::ball_point(int n) {
  const double radius = std::pow(uniform(0.0, 1.0), 1.0 / n);
  return radius * unit_vector(n);
}

Eigen::MatrixXd Sampler::rotation(int n) {
  if (n < 1) throw DimensionError("rotation: n must be >= 1");
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw DimensionError("plane_rotation: bad coordinate plane");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

std::vector<Eigen::VectorXd> sphere_points(int n, int count) {
  if (n < 1 || count < 1) throw DimensionError("sphere_points: need n >= 1 and count >= 1");
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  if (n == 1) {
    for (int i = 0; i < count; ++i) pts.push_back(Eigen::VectorXd::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    return pts;
  }
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * i / count;
      Eigen::VectorXd v(2);
      v << std::cos(a), std::sin(a);
      pts.push_back(v);
    }
    return pts;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      Eigen::VectorXd v(3);
      v << r * std::cos(phi), r * std::sin(phi), z;
      pts.push_back(v);
    }
    return pts;
  }
  Sampler sampler(0x5eedULL + static_cast<std::uint64_t>(n));
  for (int i = 0; i < count; ++i) pts.push_back(sampler.unit_vector(n));
  return pts;
}

namespace {

Eigen::MatrixXd householder(const Eigen::VectorXd& w) {
  const Eigen::Index n = w.size();
  return Eigen::MatrixXd::Identity(n, n) - 2.0 * w * w.transpose() / w.squaredNorm();
}

}  // namespace

Eigen::MatrixXd rotation_between(const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
  const Eigen::Index n = from.size();
  if (to.size() != n) throw DimensionError("rotation_between: size mismatch");
  if (n == 1) {
    if (from[0] * to[0] > 0) return Eigen::MatrixXd::Identity(1, 1);
    throw DomainError("rotation_between: SO(1) cannot reverse a direction");
  }
  // Two reflections compose to a rotation. Pick the Householder vector with
  // norm >= sqrt(2) so the construction never divides by a small number.
  if (from.dot(to) >= 0.0) {
    // H_{from+to} sends from -> -to; reflecting along `to` finishes the job.
    return householder(to) * householder(from + to);
  }
  // H_{from-to} sends from -> to; a second reflection orthogonal to `to`
  // restores det = +1 while fixing `to`.
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(to[i]) < std::abs(to[k])) k = i;
  Eigen::VectorXd v = Eigen::VectorXd::Unit(n, k) - to[k] * to;
  return householder(v) * householder(from - to);
}

}  // namespace gptlab
