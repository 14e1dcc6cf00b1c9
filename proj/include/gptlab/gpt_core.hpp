#pragma once

// Finite-dimensional general probabilistic theories.
//
// States and effects are real vectors of length d+1. States carry a leading
// 1 (normalization); the probability of effect e on state s is the Euclidean
// dot product e.s. Transformations are (d+1)x(d+1) real matrices.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gptlab/lp.hpp"

namespace gptlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultTol = 1e-9;

enum class Role { state, effect };

/// A state or effect vector of a GPT. Entries are always finite; states have
/// entries[0] == 1 exactly.
class GptVector {
 public:
  GptVector() = default;
  GptVector(Vector entries, Role role);

  static GptVector state(Vector entries) { return {std::move(entries), Role::state}; }
  static GptVector effect(Vector entries) { return {std::move(entries), Role::effect}; }
  /// (1, spatial)
  static GptVector state_from_spatial(const Vector& spatial);
  /// u = (1, 0, ..., 0)
  static GptVector unit_effect(int d);
  /// zero effect of length d+1
  static GptVector zero_effect(int d);

  const Vector& entries() const { return entries_; }
  Role role() const { return role_; }
  int dimension() const { return static_cast<int>(entries_.size()) - 1; }
  Eigen::Index size() const { return entries_.size(); }
  double operator[](Eigen::Index i) const { return entries_[i]; }
  /// Entries 1..d.
  Vector spatial() const { return entries_.tail(entries_.size() - 1); }

 private:
  Vector entries_;
  Role role_ = Role::effect;
};

struct Polytope {
  std::vector<GptVector> vertices;
};

/// Unit ball of dimension d centred at the maximally mixed state.
struct Ball {
  int d = 0;
};

class ConvexSet {
 public:
  static ConvexSet polytope(std::vector<GptVector> vertices);
  static ConvexSet ball(int d);

  int dimension() const { return dimension_; }
  bool is_polytope() const { return std::holds_alternative<Polytope>(shape_); }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  const Polytope& as_polytope() const { return std::get<Polytope>(shape_); }
  const Ball& as_ball() const { return std::get<Ball>(shape_); }

 private:
  ConvexSet(std::variant<Polytope, Ball> shape, int d) : shape_(std::move(shape)), dimension_(d) {}
  std::variant<Polytope, Ball> shape_;
  int dimension_ = 0;
};

/// Convex hull of the listed generators (u and the zero effect included).
struct PolytopeHull {
  std::vector<GptVector> generators;
};

/// Convex hull of zero, u and all (1/2)(1, v) with |v| = 1.
struct BallDual {
  int d = 0;
};

class EffectSpace {
 public:
  static EffectSpace polytope_hull(std::vector<GptVector> generators);
  static EffectSpace ball_dual(int d);

  int dimension() const { return dimension_; }
  bool is_polytope_hull() const { return std::holds_alternative<PolytopeHull>(shape_); }
  bool is_ball_dual() const { return std::holds_alternative<BallDual>(shape_); }
  const PolytopeHull& as_polytope_hull() const { return std::get<PolytopeHull>(shape_); }

  /// Generators other than u and the zero effect.
  std::vector<GptVector> extremal() const;

 private:
  EffectSpace(std::variant<PolytopeHull, BallDual> shape, int d)
      : shape_(std::move(shape)), dimension_(d) {}
  std::variant<PolytopeHull, BallDual> shape_;
  int dimension_ = 0;
};

class LinearMap {
 public:
  LinearMap() = default;
  explicit LinearMap(Matrix m);
  static LinearMap identity(int d) { return LinearMap(Matrix::Identity(d + 1, d + 1)); }

  const Matrix& matrix() const { return m_; }
  int dimension() const { return static_cast<int>(m_.rows()) - 1; }

 private:
  Matrix m_;
};

/// Which effect set a theory ships: the full normalized set, or a subset.
enum class EffectConvention { normalized, restricted };

struct TheorySpec {
  std::string name;
  int d = 0;
  ConvexSet states = ConvexSet::ball(1);
  EffectSpace effects = EffectSpace::ball_dual(1);
  std::vector<LinearMap> reversibles;
  EffectConvention convention = EffectConvention::normalized;
};

/// Throws DomainError / DimensionError when the theory is inconsistent:
/// missing u or zero effect, size mismatches, or a generator effect leaving
/// [0, 1] on some extreme state.
void validate_theory(const TheorySpec& theory, double tol = kDefaultTol);

double probability(const GptVector& effect, const GptVector& state);

struct MembershipReport {
  bool member = false;
  /// On the relative boundary (ball: unit norm; polytope: some convex weight
  /// vanishes is not tracked, so false unless v is a vertex).
  bool boundary = false;
  /// Distance-like residual: |1 - v0| + max(0, |v~| - 1) for balls, the LP
  /// phase-one optimum for polytopes.
  double residual = 0.0;
  /// Convex weights over the polytope vertices when a member.
  std::vector<double> weights;
};

struct PredicateOptions {
  double tol = kDefaultTol;
  lp::Arithmetic arithmetic = lp::Arithmetic::floating;
};

MembershipReport validate_state(const ConvexSet& space, const GptVector& v,
                                const PredicateOptions& opts = {});
bool is_pure(const ConvexSet& space, const GptVector& v, double tol = kDefaultTol);
bool is_normalized_effect(const TheorySpec& theory, const GptVector& e, double tol = kDefaultTol);

GptVector apply_map(const LinearMap& m, const GptVector& v);
bool is_reversible(const TheorySpec& theory, const LinearMap& m, double tol = kDefaultTol);

GptVector convex_mix(const std::vector<std::pair<double, GptVector>>& weighted,
                     double tol = kDefaultTol);

/// Deterministic pure states used wherever a ball must be probed pointwise.
std::vector<GptVector> extreme_state_samples(const ConvexSet& space, int ball_samples = 100);

}  // namespace gptlab
