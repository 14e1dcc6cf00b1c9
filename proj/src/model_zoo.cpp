#include "gptlab/model_zoo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "gptlab/errors.hpp"

namespace gptlab::zoo {

namespace {

constexpr double kPi = std::numbers::pi;

int positive_mod(int j, int N) {
  const int r = j % N;
  return r < 0 ? r + N : r;
}

std::optional<int> parse_suffix(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  int value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

// Regular simplex vertex coordinates: Helmert basis of the hyperplane
// orthogonal to (1, ..., 1), scaled to circumradius 1. Each entry is a single
// square root so N = 1 reproduces (-1) and (+1) exactly.
double simplex_coordinate(int N, int vertex, int axis) {
  const int k = axis + 1;
  if (vertex > k) return 0.0;
  const double scale = std::sqrt(static_cast<double>(N + 1) / (static_cast<double>(N) * k * (k + 1)));
  return vertex < k ? -scale : k * scale;
}

}  // namespace

PolygonParams PolygonParams::make(int N) {
  if (N < 3) throw DomainError("polygon: N must be >= 3");
  return {N, std::sqrt(1.0 / std::cos(kPi / N)), 2.0 * kPi / N};
}

TheorySpec classical_simplex(int N) {
  if (N < 1) throw DomainError("classical_simplex: N must be >= 1 (d = 0 is trivial)");
  std::vector<GptVector> states;
  std::vector<GptVector> effects;
  std::vector<Vector> spatial;
  for (int i = 0; i <= N; ++i) {
    Vector s(N);
    for (int a = 0; a < N; ++a) s[a] = simplex_coordinate(N, i, a);
    spatial.push_back(s);
    states.push_back(GptVector::state_from_spatial(s));
    Vector e(N + 1);
    e[0] = 1.0;
    e.tail(N) = N * s;
    effects.push_back(GptVector::effect(e / (N + 1)));
  }
  effects.push_back(GptVector::unit_effect(N));
  effects.push_back(GptVector::zero_effect(N));

  // Adjacent transpositions generate the permutation group; each is the
  // reflection swapping two vertices.
  std::vector<LinearMap> reversibles;
  for (int i = 0; i < N; ++i) {
    const Vector w = spatial[i] - spatial[i + 1];
    Matrix m = Matrix::Identity(N + 1, N + 1);
    m.bottomRightCorner(N, N) -= 2.0 * w * w.transpose() / w.squaredNorm();
    reversibles.emplace_back(m);
  }

  TheorySpec t;
  t.name = "simplex:" + std::to_string(N);
  t.d = N;
  t.states = ConvexSet::polytope(std::move(states));
  t.effects = EffectSpace::polytope_hull(std::move(effects));
  t.reversibles = std::move(reversibles);
  // For N >= 2 the hull of {0, u, eps_i} is strictly smaller than E_norm.
  t.convention = N == 1 ? EffectConvention::normalized : EffectConvention::restricted;
  return t;
}

TheorySpec classical_bit() {
  TheorySpec t = classical_simplex(1);
  t.name = "bit";
  Matrix r(2, 2);
  r << 1, 0, 0, -1;
  t.reversibles = {LinearMap(r)};
  return t;
}

GptVector polygon_state(int N, int i) {
  const auto p = PolygonParams::make(N);
  const double a = 2.0 * kPi * (i + 1) / N;
  Vector v(3);
  v << 1.0, p.radius * std::cos(a), p.radius * std::sin(a);
  return GptVector::state(v);
}

GptVector polygon_effect(int N, int i) {
  const auto p = PolygonParams::make(N);
  Vector v(3);
  if (N % 2 == 0) {
    const double a = (2.0 * i + 1.0) * kPi / N;
    v << 1.0, p.radius * std::cos(a), p.radius * std::sin(a);
    v *= 0.5;
  } else {
    const double a = 2.0 * kPi * (i + 1) / N;
    v << 1.0, p.radius * std::cos(a), p.radius * std::sin(a);
    v /= 1.0 + p.radius * p.radius;
  }
  return GptVector::effect(v);
}

GptVector polygon_complement(int N, int i) {
  return GptVector::effect(Vector::Unit(3, 0) - polygon_effect(N, i).entries());
}

LinearMap polygon_rotation(int N, int j) {
  const auto p = PolygonParams::make(N);
  const double a = positive_mod(j, N) * p.angle;
  Matrix m = Matrix::Identity(3, 3);
  m(1, 1) = std::cos(a);
  m(1, 2) = -std::sin(a);
  m(2, 1) = std::sin(a);
  m(2, 2) = std::cos(a);
  return LinearMap(m);
}

TheorySpec polygon_theory(int N) {
  PolygonParams::make(N);
  std::vector<GptVector> states;
  std::vector<GptVector> effects;
  for (int i = 0; i < N; ++i) {
    states.push_back(polygon_state(N, i));
    effects.push_back(polygon_effect(N, i));
  }
  if (N % 2 == 1)
    for (int i = 0; i < N; ++i) effects.push_back(polygon_complement(N, i));
  effects.push_back(GptVector::unit_effect(2));
  effects.push_back(GptVector::zero_effect(2));

  TheorySpec t;
  t.name = "polygon:" + std::to_string(N);
  t.d = 2;
  t.states = ConvexSet::polytope(std::move(states));
  t.effects = EffectSpace::polytope_hull(std::move(effects));
  t.reversibles = {polygon_rotation(N, 1)};
  t.convention = EffectConvention::normalized;
  return t;
}

TheorySpec euclidean_ball(int d) {
  if (d < 1) throw DomainError("euclidean_ball: d must be >= 1 (d = 0 is trivial)");
  TheorySpec t;
  t.name = "ball:" + std::to_string(d);
  t.d = d;
  t.states = ConvexSet::ball(d);
  t.effects = EffectSpace::ball_dual(d);
  // Coordinate-plane rotations by one radian; an irrational multiple of pi,
  // so each generates a dense subgroup of its SO(2).
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) t.reversibles.push_back(ball_reversible(plane_rotation(d, i, j, 1.0)));
  t.convention = EffectConvention::normalized;
  return t;
}

GptVector ball_effect(const Vector& unit_direction) {
  Vector v(unit_direction.size() + 1);
  v[0] = 1.0;
  v.tail(unit_direction.size()) = unit_direction;
  return GptVector::effect(0.5 * v);
}

LinearMap ball_reversible(const Matrix& rotation) {
  const Eigen::Index d = rotation.rows();
  Matrix m = Matrix::Identity(d + 1, d + 1);
  m.bottomRightCorner(d, d) = rotation;
  return LinearMap(m);
}

LinearMap ball_rotation_to(const Vector& from, const Vector& to) {
  return ball_reversible(rotation_between(from, to));
}

GptVector density_to_gpt(const BlochVector& bloch, double tol) {
  if (bloch.r.norm() > 1.0 + tol) throw DomainError("density_to_gpt: Bloch vector outside the unit ball");
  return GptVector::state_from_spatial(bloch.r);
}

BoxWorldPair box_world_pair() {
  BoxWorldPair pair;
  pair.local = polygon_theory(4);
  pair.local.name = "boxworld";
  pair.measurements = {BinaryMeasurementIndices{0, 2}, BinaryMeasurementIndices{1, 3}};
  return pair;
}

TheorySpec by_name(const std::string& name) {
  if (name == "bit") return classical_bit();
  if (name == "boxworld") return box_world_pair().local;
  if (auto n = parse_suffix(name, "simplex:")) return classical_simplex(*n);
  if (auto n = parse_suffix(name, "polygon:")) return polygon_theory(*n);
  if (auto n = parse_suffix(name, "ball:")) return euclidean_ball(*n);
  throw DomainError("unknown theory name '" + name + "'");
}

bool is_registered(const std::string& name) {
  try {
    by_name(name);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

double polygon_disk_hausdorff(int N, int probes) {
  const auto p = PolygonParams::make(N);
  std::vector<Eigen::Vector2d> verts;
  for (int i = 0; i < N; ++i) {
    const auto s = polygon_state(N, i);
    verts.emplace_back(s[1], s[2]);
  }
  // Polygon side: vertices are the farthest points from the disk.
  double dist = std::max(0.0, p.radius - 1.0);
  for (int k = 0; k < probes; ++k) {
    const double a = 2.0 * kPi * k / probes;
    const Eigen::Vector2d q(std::cos(a), std::sin(a));
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
      const Eigen::Vector2d& s0 = verts[i];
      const Eigen::Vector2d& s1 = verts[(i + 1) % N];
      const Eigen::Vector2d e = s1 - s0;
      const Eigen::Vector2d w = q - s0;
      // Counter-clockwise vertices: q is outside if right of some edge.
      if (e.x() * w.y() - e.y() * w.x() < 0) inside = false;
      const double t = std::clamp(w.dot(e) / e.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (w - t * e).norm());
    }
    if (!inside) dist = std::max(dist, best);
  }
  return dist;
}

}  // namespace gptlab::zoo
