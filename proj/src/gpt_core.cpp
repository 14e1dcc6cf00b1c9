#include "gptlab/gpt_core.hpp"

#include <cmath>
#include <string>

#include "gptlab/errors.hpp"
#include "gptlab/sampling.hpp"

namespace gptlab {

GptVector::GptVector(Vector entries, Role role) : entries_(std::move(entries)), role_(role) {
  if (entries_.size() < 1) throw DimensionError("GptVector: empty vector");
  if (!entries_.allFinite()) throw DomainError("GptVector: non-finite entry");
  if (role_ == Role::state && entries_[0] != 1.0)
    throw DomainError("GptVector: state must have leading entry exactly 1");
}

GptVector GptVector::state_from_spatial(const Vector& spatial) {
  Vector v(spatial.size() + 1);
  v[0] = 1.0;
  v.tail(spatial.size()) = spatial;
  return state(std::move(v));
}

GptVector GptVector::unit_effect(int d) { return effect(Vector::Unit(d + 1, 0)); }

GptVector GptVector::zero_effect(int d) { return effect(Vector::Zero(d + 1)); }

ConvexSet ConvexSet::polytope(std::vector<GptVector> vertices) {
  if (vertices.empty()) throw DomainError("polytope: empty vertex list");
  const Eigen::Index len = vertices.front().size();
  for (const auto& v : vertices) {
    if (v.size() != len) throw DimensionError("polytope: vertices of different length");
    if (v.role() != Role::state) throw DomainError("polytope: vertices must be states");
  }
  return ConvexSet(Polytope{std::move(vertices)}, static_cast<int>(len) - 1);
}

ConvexSet ConvexSet::ball(int d) {
  if (d < 0) throw DimensionError("ball: negative dimension");
  return ConvexSet(Ball{d}, d);
}

EffectSpace EffectSpace::polytope_hull(std::vector<GptVector> generators) {
  if (generators.empty()) throw DomainError("effect hull: no generators");
  const Eigen::Index len = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != len) throw DimensionError("effect hull: generators of different length");
  return EffectSpace(PolytopeHull{std::move(generators)}, static_cast<int>(len) - 1);
}

EffectSpace EffectSpace::ball_dual(int d) {
  if (d < 0) throw DimensionError("ball dual: negative dimension");
  return EffectSpace(BallDual{d}, d);
}

std::vector<GptVector> EffectSpace::extremal() const {
  std::vector<GptVector> out;
  if (!is_polytope_hull()) return out;
  const Vector u = Vector::Unit(dimension_ + 1, 0);
  for (const auto& g : as_polytope_hull().generators) {
    if (g.entries().isZero(0.0) || g.entries() == u) continue;
    out.push_back(g);
  }
  return out;
}

LinearMap::LinearMap(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) throw DimensionError("LinearMap: matrix must be square");
  if (!m_.allFinite()) throw DomainError("LinearMap: non-finite entry");
}

double probability(const GptVector& effect, const GptVector& state) {
  if (effect.size() != state.size())
    throw DimensionError("probability: effect has length " + std::to_string(effect.size()) +
                         ", state has length " + std::to_string(state.size()));
  return effect.entries().dot(state.entries());
}

namespace {

MembershipReport ball_membership(int d, const Vector& v, double tol) {
  MembershipReport rep;
  if (v.size() != d + 1) throw DimensionError("validate_state: length mismatch");
  const double norm = v.tail(d).norm();
  rep.residual = std::abs(v[0] - 1.0) + std::max(0.0, norm - 1.0);
  rep.member = std::abs(v[0] - 1.0) <= tol && norm <= 1.0 + tol;
  rep.boundary = rep.member && std::abs(norm - 1.0) <= tol;
  return rep;
}

template <class Scalar>
lp::Problem<Scalar> hull_problem(const std::vector<GptVector>& vertices, const Vector& v) {
  lp::Problem<Scalar> p;
  const auto rows = static_cast<std::size_t>(v.size());
  p.A.assign(rows, std::vector<Scalar>(vertices.size()));
  p.b.resize(rows);
  p.c.assign(vertices.size(), Scalar(0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < vertices.size(); ++k)
      p.A[r][k] = Scalar(vertices[k][static_cast<Eigen::Index>(r)]);
    p.b[r] = Scalar(v[static_cast<Eigen::Index>(r)]);
  }
  return p;
}

MembershipReport polytope_membership(const Polytope& poly, const Vector& v, const PredicateOptions& opts) {
  MembershipReport rep;
  if (v.size() != poly.vertices.front().size()) throw DimensionError("validate_state: length mismatch");
  if (std::abs(v[0] - 1.0) > opts.tol) {
    rep.residual = std::abs(v[0] - 1.0);
    return rep;
  }
  Vector target = v;
  target[0] = 1.0;
  if (opts.arithmetic == lp::Arithmetic::exact) {
    const auto sol = lp::solve(hull_problem<Rational>(poly.vertices, target));
    rep.residual = sol.infeasibility.convert_to<double>();
    rep.member = sol.status != lp::Status::infeasible;
    if (rep.member)
      for (const auto& w : sol.x) rep.weights.push_back(w.convert_to<double>());
  } else {
    lp::Options lo;
    lo.feasibility_tol = opts.tol;
    const auto sol = lp::solve(hull_problem<double>(poly.vertices, target), lo);
    rep.residual = sol.infeasibility;
    rep.member = sol.status != lp::Status::infeasible;
    if (rep.member) rep.weights = sol.x;
  }
  if (rep.member) {
    for (const auto& vert : poly.vertices)
      if ((vert.entries() - v).cwiseAbs().maxCoeff() <= opts.tol) rep.boundary = true;
  }
  return rep;
}

MembershipReport raw_membership(const ConvexSet& space, const Vector& v, const PredicateOptions& opts) {
  if (space.is_ball()) return ball_membership(space.as_ball().d, v, opts.tol);
  return polytope_membership(space.as_polytope(), v, opts);
}

bool raw_pure(const ConvexSet& space, const Vector& v, double tol) {
  if (space.is_ball()) return std::abs(v.tail(space.dimension()).norm() - 1.0) <= tol;
  for (const auto& vert : space.as_polytope().vertices)
    if ((vert.entries() - v).cwiseAbs().maxCoeff() <= tol) return true;
  return false;
}

}  // namespace

MembershipReport validate_state(const ConvexSet& space, const GptVector& v, const PredicateOptions& opts) {
  return raw_membership(space, v.entries(), opts);
}

bool is_pure(const ConvexSet& space, const GptVector& v, double tol) {
  PredicateOptions opts;
  opts.tol = tol;
  if (!validate_state(space, v, opts).member) throw DomainError("is_pure: vector is not in the state space");
  return raw_pure(space, v.entries(), tol);
}

bool is_normalized_effect(const TheorySpec& theory, const GptVector& e, double tol) {
  if (e.dimension() != theory.d) throw DimensionError("is_normalized_effect: dimension mismatch");
  if (theory.states.is_ball()) {
    const double e0 = e[0];
    const double norm = e.spatial().norm();
    return e0 - norm >= -tol && e0 + norm <= 1.0 + tol;
  }
  for (const auto& s : theory.states.as_polytope().vertices) {
    const double p = probability(e, s);
    if (p < -tol || p > 1.0 + tol) return false;
  }
  return true;
}

GptVector apply_map(const LinearMap& m, const GptVector& v) {
  if (m.matrix().cols() != v.size()) throw DimensionError("apply_map: dimension mismatch");
  Vector out = m.matrix() * v.entries();
  if (v.role() == Role::state) {
    if (std::abs(out[0] - 1.0) > 1e-12) throw DomainError("apply_map: map does not preserve normalization");
    out[0] = 1.0;
  }
  return GptVector(std::move(out), v.role());
}

bool is_reversible(const TheorySpec& theory, const LinearMap& m, double tol) {
  if (m.dimension() != theory.d) throw DimensionError("is_reversible: dimension mismatch");
  const Matrix& a = m.matrix();
  if (std::abs(a.determinant()) <= tol) return false;
  const Matrix inv = a.inverse();

  PredicateOptions opts;
  opts.tol = tol;
  if (theory.states.is_ball()) {
    const int d = theory.d;
    if (std::abs(a(0, 0) - 1.0) > tol) return false;
    if (d > 0) {
      if (a.row(0).tail(d).cwiseAbs().maxCoeff() > tol) return false;
      if (a.col(0).tail(d).cwiseAbs().maxCoeff() > tol) return false;
      const Matrix o = a.bottomRightCorner(d, d);
      if ((o.transpose() * o - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  for (const auto& s : extreme_state_samples(theory.states)) {
    if (!raw_membership(theory.states, a * s.entries(), opts).member) return false;
    if (!raw_membership(theory.states, inv * s.entries(), opts).member) return false;
  }
  return true;
}

GptVector convex_mix(const std::vector<std::pair<double, GptVector>>& weighted, double tol) {
  if (weighted.empty()) throw DomainError("convex_mix: empty mixture");
  const Eigen::Index len = weighted.front().second.size();
  double total = 0.0;
  Vector acc = Vector::Zero(len);
  for (const auto& [q, s] : weighted) {
    if (!(q >= 0.0)) throw DomainError("convex_mix: negative weight");
    if (s.role() != Role::state) throw DomainError("convex_mix: component is not a state");
    if (s.size() != len) throw DimensionError("convex_mix: length mismatch");
    total += q;
    acc += q * s.entries();
  }
  if (std::abs(total - 1.0) > tol) throw DomainError("convex_mix: weights do not sum to 1");
  acc[0] = 1.0;
  return GptVector::state(std::move(acc));
}

std::vector<GptVector> extreme_state_samples(const ConvexSet& space, int ball_samples) {
  if (space.is_polytope()) return space.as_polytope().vertices;
  std::vector<GptVector> out;
  const int d = space.dimension();
  if (d == 0) {
    out.push_back(GptVector::state(Vector::Ones(1)));
    return out;
  }
  for (const auto& p : sphere_points(d, ball_samples)) out.push_back(GptVector::state_from_spatial(p));
  return out;
}

void validate_theory(const TheorySpec& theory, double tol) {
  const int d = theory.d;
  if (d < 0) throw DimensionError("theory: negative dimension");
  if (theory.states.dimension() != d) throw DimensionError("theory: state space dimension mismatch");
  if (theory.effects.dimension() != d) throw DimensionError("theory: effect space dimension mismatch");
  for (const auto& r : theory.reversibles)
    if (r.dimension() != d) throw DimensionError("theory: transformation dimension mismatch");
  if (theory.effects.is_polytope_hull()) {
    const auto& gens = theory.effects.as_polytope_hull().generators;
    const Vector u = Vector::Unit(d + 1, 0);
    bool has_u = false;
    bool has_zero = false;
    for (const auto& g : gens) {
      if ((g.entries() - u).cwiseAbs().maxCoeff() <= tol) has_u = true;
      if (g.entries().cwiseAbs().maxCoeff() <= tol) has_zero = true;
      if (!is_normalized_effect(theory, g, tol)) throw DomainError("theory: generator effect leaves [0, 1]");
    }
    if (!has_u || !has_zero) throw DomainError("theory: effect generators must include u and the zero effect");
  }
}

}  // namespace gptlab
