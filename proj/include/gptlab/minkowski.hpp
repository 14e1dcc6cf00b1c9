#pragma once

// Minkowski space R^{1+n} with metric diag(-1, 1, ..., 1), the proper
// orthochronous Poincare group, standard boosts and the little group of a
// massive particle at rest. Units with c = 1; entry 0 is time.

#include <utility>

#include <Eigen/Dense>

#include "gptlab/sampling.hpp"

namespace gptlab::spacetime {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class SpacetimeVector {
 public:
  SpacetimeVector() = default;
  explicit SpacetimeVector(Vector entries);
  static SpacetimeVector zero(int n) { return SpacetimeVector(Vector::Zero(n + 1)); }
  /// (t, spatial)
  static SpacetimeVector make(double t, const Vector& spatial);

  const Vector& entries() const { return v_; }
  int n() const { return static_cast<int>(v_.size()) - 1; }
  double time() const { return v_[0]; }
  Vector spatial() const { return v_.tail(v_.size() - 1); }

  friend SpacetimeVector operator+(const SpacetimeVector& x, const SpacetimeVector& y);
  friend SpacetimeVector operator-(const SpacetimeVector& x, const SpacetimeVector& y);

 private:
  Vector v_;
};

/// diag(-1, 1, ..., 1) of size 1 + n.
Matrix metric(int n);

/// Signed squared interval -(y0 - x0)^2 + |y~ - x~|^2.
double interval(const SpacetimeVector& x, const SpacetimeVector& y);

bool is_lorentz(const Matrix& m, double tol = 1e-9);
/// Lorentz with det = 1 and m(0, 0) >= 1.
bool is_proper_orthochronous(const Matrix& m, double tol = 1e-9);

class LorentzMatrix {
 public:
  LorentzMatrix() = default;
  /// Throws DomainError unless m^T eta m = eta within tol * max(1, |m|^2).
  explicit LorentzMatrix(Matrix m, double tol = 1e-9);
  static LorentzMatrix identity(int n) { return LorentzMatrix(Matrix::Identity(n + 1, n + 1)); }
  /// block-diag(1, o) for an orthogonal o.
  static LorentzMatrix rotation(const Matrix& o);

  const Matrix& matrix() const { return m_; }
  int n() const { return static_cast<int>(m_.rows()) - 1; }
  double determinant() const { return m_.determinant(); }
  bool orthochronous() const { return m_(0, 0) > 0.0; }
  bool proper_orthochronous(double tol = 1e-9) const { return is_proper_orthochronous(m_, tol); }
  /// eta m^T eta
  LorentzMatrix inverse() const;
  /// Spatial block when m fixes the time axis.
  Matrix spatial_block() const { return m_.bottomRightCorner(n(), n()); }

  SpacetimeVector operator*(const SpacetimeVector& x) const;
  friend LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b);

 private:
  Matrix m_;
};

/// x -> lambda x + a
struct PoincareTransform {
  SpacetimeVector a;
  LorentzMatrix lambda;

  static PoincareTransform identity(int n) { return {SpacetimeVector::zero(n), LorentzMatrix::identity(n)}; }
  static PoincareTransform make(SpacetimeVector a, LorentzMatrix lambda);
  int n() const { return lambda.n(); }
};

SpacetimeVector apply_poincare(const PoincareTransform& p, const SpacetimeVector& x);

/// Position and momentum of a particle; translations only move the position.
struct PhaseSpacePoint {
  SpacetimeVector position;
  SpacetimeVector momentum;
};

/// P(x, L)(b, p) = (x + L b, L p)
PhaseSpacePoint apply_poincare(const PoincareTransform& p, const PhaseSpacePoint& point);

/// P(a2 + L2 a1, L2 L1): first p1, then p2.
PoincareTransform compose(const PoincareTransform& p2, const PoincareTransform& p1);
PoincareTransform inverse(const PoincareTransform& p);

/// Largest entry-wise deviation between two transforms.
double distance(const PoincareTransform& p, const PoincareTransform& q);

class MassiveMomentum {
 public:
  MassiveMomentum() = default;
  /// Throws DomainError unless m > 0, p0 > 0 and p^T eta p = -m^2 within
  /// tol * max(1, p0^2).
  MassiveMomentum(SpacetimeVector p, double m, double tol = 1e-9);
  /// (sqrt(|p~|^2 + m^2), p~)
  static MassiveMomentum on_shell(const Vector& spatial, double m);
  /// (m, 0, ..., 0)
  static MassiveMomentum rest(int n, double m);

  const SpacetimeVector& p() const { return p_; }
  double mass() const { return m_; }
  int n() const { return p_.n(); }
  double spatial_norm() const { return p_.spatial().norm(); }
  /// sqrt(|p~|^2 + m^2) / m
  double gamma() const;

 private:
  SpacetimeVector p_;
  double m_ = 1.0;
};

/// Image of a momentum under a Lorentz matrix, revalidated on the mass shell.
MassiveMomentum transform(const LorentzMatrix& l, const MassiveMomentum& p);

/// Pure boost along the first axis with gamma = sqrt(|p|^2 + m^2) / m.
LorentzMatrix boost_x(double momentum_norm, double mass, int n);

/// block-diag(1, O) with O in SO(n) and O e1 = unit_direction. Throws
/// DomainError for non-unit input or when n = 1 and the direction is -e1.
LorentzMatrix rotation_to_axis(const Vector& unit_direction, double tol = 1e-9);

/// Lorentz matrix taking (m, 0, ..., 0) to p: Q(p^) S(|p|) Q(p^)^{-1}, and
/// the identity when p is at rest. For n = 1 and negative momentum the boost
/// is reversed, since SO(1) has no rotation taking e1 to -e1.
LorentzMatrix standard_boost(const MassiveMomentum& p);

/// Element of the little group of (0, p_rest) induced by translation a,
/// position x, Lorentz matrix lambda and momentum p.
PoincareTransform little_group_element(const SpacetimeVector& a, const SpacetimeVector& x,
                                       const LorentzMatrix& lambda, const MassiveMomentum& p);

/// standard_boost(lambda p)^{-1} lambda standard_boost(p)
LorentzMatrix wigner_rotation(const LorentzMatrix& lambda, const MassiveMomentum& p);

/// Rotation angle of the spatial block: atan2 for n = 2, the trace formula
/// with a clamped acos for n = 3. Throws DomainError for other n.
double rotation_angle(const LorentzMatrix& rotation);

/// Random proper orthochronous Lorentz matrix: rotation, boost along e1 with
/// rapidity uniform in [0, max_rapidity], rotation.
LorentzMatrix random_lorentz(Sampler& s, int n, double max_rapidity = 1.5);
/// Random Lorentz part plus a translation with entries uniform in [-scale, scale].
PoincareTransform random_poincare(Sampler& s, int n, double max_rapidity = 1.5, double scale = 2.0);
MassiveMomentum random_momentum(Sampler& s, int n, double mass, double max_norm = 2.0);
SpacetimeVector random_event(Sampler& s, int n, double scale = 2.0);

}  // namespace gptlab::spacetime
