#include "gptlab/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gptlab/errors.hpp"

namespace gptlab::spacetime {

namespace {

void same_n(int a, int b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": spatial dimensions " + std::to_string(a) + " and " + std::to_string(b));
}

double lorentz_defect(const Matrix& m) {
  const int n = static_cast<int>(m.rows()) - 1;
  const Matrix eta = metric(n);
  return (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
}

// Entries of products of boosts grow like gamma^2; scale the tolerance with them.
double scaled(double tol, const Matrix& m) { return tol * std::max(1.0, m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff()); }

}  // namespace

SpacetimeVector::SpacetimeVector(Vector entries) : v_(std::move(entries)) {
  if (v_.size() < 2) throw DimensionError("SpacetimeVector: need 1 + n entries with n >= 1");
  if (!v_.allFinite()) throw DomainError("SpacetimeVector: non-finite entry");
}

SpacetimeVector SpacetimeVector::make(double t, const Vector& spatial) {
  Vector v(spatial.size() + 1);
  v[0] = t;
  v.tail(spatial.size()) = spatial;
  return SpacetimeVector(std::move(v));
}

SpacetimeVector operator+(const SpacetimeVector& x, const SpacetimeVector& y) {
  same_n(x.n(), y.n(), "SpacetimeVector +");
  return SpacetimeVector(x.v_ + y.v_);
}

SpacetimeVector operator-(const SpacetimeVector& x, const SpacetimeVector& y) {
  same_n(x.n(), y.n(), "SpacetimeVector -");
  return SpacetimeVector(x.v_ - y.v_);
}

Matrix metric(int n) {
  if (n < 1) throw DimensionError("metric: n must be >= 1");
  Matrix eta = Matrix::Identity(n + 1, n + 1);
  eta(0, 0) = -1.0;
  return eta;
}

double interval(const SpacetimeVector& x, const SpacetimeVector& y) {
  same_n(x.n(), y.n(), "interval");
  const Vector d = y.entries() - x.entries();
  return -d[0] * d[0] + d.tail(d.size() - 1).squaredNorm();
}

bool is_lorentz(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 2 || !m.allFinite()) return false;
  return lorentz_defect(m) <= scaled(tol, m);
}

bool is_proper_orthochronous(const Matrix& m, double tol) {
  if (!is_lorentz(m, tol)) return false;
  return std::abs(m.determinant() - 1.0) <= scaled(tol, m) && m(0, 0) >= 1.0 - tol;
}

LorentzMatrix::LorentzMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) throw DimensionError("LorentzMatrix: need a (1+n)x(1+n) matrix");
  if (!is_lorentz(m_, tol)) throw DomainError("LorentzMatrix: m^T eta m differs from eta");
}

LorentzMatrix LorentzMatrix::rotation(const Matrix& o) {
  const Eigen::Index n = o.rows();
  Matrix m = Matrix::Identity(n + 1, n + 1);
  m.bottomRightCorner(n, n) = o;
  return LorentzMatrix(std::move(m));
}

LorentzMatrix LorentzMatrix::inverse() const {
  const Matrix eta = metric(n());
  LorentzMatrix out;
  out.m_ = eta * m_.transpose() * eta;
  return out;
}

SpacetimeVector LorentzMatrix::operator*(const SpacetimeVector& x) const {
  same_n(n(), x.n(), "LorentzMatrix * vector");
  return SpacetimeVector(m_ * x.entries());
}

LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) {
  same_n(a.n(), b.n(), "LorentzMatrix product");
  LorentzMatrix out;
  out.m_ = a.m_ * b.m_;
  return out;
}

PoincareTransform PoincareTransform::make(SpacetimeVector a, LorentzMatrix lambda) {
  same_n(a.n(), lambda.n(), "PoincareTransform");
  return {std::move(a), std::move(lambda)};
}

SpacetimeVector apply_poincare(const PoincareTransform& p, const SpacetimeVector& x) {
  return p.lambda * x + p.a;
}

PhaseSpacePoint apply_poincare(const PoincareTransform& p, const PhaseSpacePoint& point) {
  return {p.lambda * point.position + p.a, p.lambda * point.momentum};
}

PoincareTransform compose(const PoincareTransform& p2, const PoincareTransform& p1) {
  same_n(p2.n(), p1.n(), "compose");
  return {p2.a + p2.lambda * p1.a, p2.lambda * p1.lambda};
}

PoincareTransform inverse(const PoincareTransform& p) {
  const LorentzMatrix inv = p.lambda.inverse();
  return {SpacetimeVector(-(inv * p.a).entries()), inv};
}

double distance(const PoincareTransform& p, const PoincareTransform& q) {
  same_n(p.n(), q.n(), "distance");
  return std::max((p.a.entries() - q.a.entries()).cwiseAbs().maxCoeff(),
                  (p.lambda.matrix() - q.lambda.matrix()).cwiseAbs().maxCoeff());
}

MassiveMomentum::MassiveMomentum(SpacetimeVector p, double m, double tol) : p_(std::move(p)), m_(m) {
  if (!(m_ > 0.0)) throw DomainError("MassiveMomentum: mass must be positive");
  if (!(p_.time() > 0.0)) throw DomainError("MassiveMomentum: energy must be positive");
  const double shell = -p_.time() * p_.time() + p_.spatial().squaredNorm();
  if (std::abs(shell + m_ * m_) > tol * std::max(1.0, p_.time() * p_.time()))
    throw DomainError("MassiveMomentum: p is off the mass shell");
}

MassiveMomentum MassiveMomentum::on_shell(const Vector& spatial, double m) {
  if (!(m > 0.0)) throw DomainError("MassiveMomentum: mass must be positive");
  return {SpacetimeVector::make(std::sqrt(spatial.squaredNorm() + m * m), spatial), m};
}

MassiveMomentum MassiveMomentum::rest(int n, double m) { return on_shell(Vector::Zero(n), m); }

double MassiveMomentum::gamma() const { return p_.time() / m_; }

MassiveMomentum transform(const LorentzMatrix& l, const MassiveMomentum& p) {
  return {l * p.p(), p.mass(), 1e-8};
}

LorentzMatrix boost_x(double momentum_norm, double mass, int n) {
  if (!(mass > 0.0)) throw DomainError("boost_x: mass must be positive");
  if (!(momentum_norm >= 0.0)) throw DomainError("boost_x: momentum norm must be nonnegative");
  if (n < 1) throw DimensionError("boost_x: n must be >= 1");
  const double gamma = std::sqrt(momentum_norm * momentum_norm + mass * mass) / mass;
  const double beta_gamma = momentum_norm / mass;  // sqrt(gamma^2 - 1) without cancellation
  Matrix m = Matrix::Identity(n + 1, n + 1);
  m(0, 0) = gamma;
  m(1, 1) = gamma;
  m(0, 1) = beta_gamma;
  m(1, 0) = beta_gamma;
  return LorentzMatrix(std::move(m));
}

LorentzMatrix rotation_to_axis(const Vector& unit_direction, double tol) {
  if (unit_direction.size() < 1) throw DimensionError("rotation_to_axis: empty direction");
  if (std::abs(unit_direction.norm() - 1.0) > tol) throw DomainError("rotation_to_axis: direction is not a unit vector");
  const Eigen::Index n = unit_direction.size();
  return LorentzMatrix::rotation(rotation_between(Vector::Unit(n, 0), unit_direction));
}

LorentzMatrix standard_boost(const MassiveMomentum& p) {
  const int n = p.n();
  const double norm = p.spatial_norm();
  if (norm == 0.0) return LorentzMatrix::identity(n);
  const LorentzMatrix s = boost_x(norm, p.mass(), n);
  if (n == 1) {
    if (p.p().entries()[1] > 0) return s;
    return s.inverse();
  }
  const LorentzMatrix q = rotation_to_axis(p.p().spatial() / norm);
  return q * s * q.inverse();
}

PoincareTransform little_group_element(const SpacetimeVector& a, const SpacetimeVector& x,
                                       const LorentzMatrix& lambda, const MassiveMomentum& p) {
  same_n(a.n(), x.n(), "little_group_element");
  same_n(a.n(), lambda.n(), "little_group_element");
  same_n(a.n(), p.n(), "little_group_element");
  if (!lambda.proper_orthochronous(1e-8))
    throw DomainError("little_group_element: Lorentz matrix is not proper orthochronous");
  const LorentzMatrix c = standard_boost(transform(lambda, p)).inverse();
  const SpacetimeVector xa = x + a;
  const PoincareTransform to_p{x, standard_boost(p)};
  const PoincareTransform move{xa - lambda * x, lambda};
  const PoincareTransform back{SpacetimeVector(-(c * xa).entries()), c};
  return compose(back, compose(move, to_p));
}

LorentzMatrix wigner_rotation(const LorentzMatrix& lambda, const MassiveMomentum& p) {
  same_n(lambda.n(), p.n(), "wigner_rotation");
  if (!lambda.proper_orthochronous(1e-8))
    throw DomainError("wigner_rotation: Lorentz matrix is not proper orthochronous");
  return standard_boost(transform(lambda, p)).inverse() * lambda * standard_boost(p);
}

double rotation_angle(const LorentzMatrix& rotation) {
  const Matrix o = rotation.spatial_block();
  if (rotation.n() == 2) return std::atan2(o(1, 0), o(0, 0));
  if (rotation.n() == 3) return std::acos(std::clamp((o.trace() - 1.0) / 2.0, -1.0, 1.0));
  throw DomainError("rotation_angle: defined for n = 2 and n = 3");
}

LorentzMatrix random_lorentz(Sampler& s, int n, double max_rapidity) {
  const double rapidity = s.uniform(0.0, max_rapidity);
  const LorentzMatrix boost = boost_x(std::sinh(rapidity), 1.0, n);
  if (n == 1) return s.uniform(0.0, 1.0) < 0.5 ? boost : boost.inverse();
  return LorentzMatrix::rotation(s.rotation(n)) * boost * LorentzMatrix::rotation(s.rotation(n));
}

PoincareTransform random_poincare(Sampler& s, int n, double max_rapidity, double scale) {
  const LorentzMatrix l = random_lorentz(s, n, max_rapidity);
  return {random_event(s, n, scale), l};
}

MassiveMomentum random_momentum(Sampler& s, int n, double mass, double max_norm) {
  const double r = s.uniform(0.0, max_norm);
  return MassiveMomentum::on_shell(r * s.unit_vector(n), mass);
}

SpacetimeVector random_event(Sampler& s, int n, double scale) {
  Vector v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = s.uniform(-scale, scale);
  return SpacetimeVector(std::move(v));
}

}  // namespace gptlab::spacetime
