#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "gptlab/errors.hpp"
#include "gptlab/gpt_core.hpp"
#include "gptlab/model_zoo.hpp"

using namespace gptlab;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("vectors reject non-finite entries and unnormalized states") {
  CHECK_THROWS(GptVector::state(vec({1, std::numeric_limits<double>::quiet_NaN()})));
  CHECK_THROWS(GptVector::effect(vec({std::numeric_limits<double>::infinity(), 0})));
  CHECK_THROWS(GptVector::state(vec({0.5, 0})));
  CHECK_NOTHROW(GptVector::effect(vec({3, -7})));
}

TEST_CASE("probability") {
  const auto bit = zoo::classical_bit();
  const auto& s = bit.states.as_polytope().vertices;
  const auto e = bit.effects.extremal();
  SUBCASE("bit eps_0 on zeta_0") {
    CHECK(e[0].entries().isApprox(vec({0.5, -0.5})));
    CHECK(s[0].entries().isApprox(vec({1, -1})));
    CHECK(probability(e[0], s[0]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(probability(e[0], s[1]) == doctest::Approx(0.0));
  }
  SUBCASE("unit effect") {
    CHECK(probability(GptVector::unit_effect(1), s[1]) == 1.0);
    CHECK(probability(GptVector::unit_effect(3), GptVector::state(vec({1, 0.1, -0.3, 0.2}))) == 1.0);
  }
  SUBCASE("Bloch: antiparallel effect and state") {
    const auto ev = zoo::ball_effect(vec({0, 0, 1}));
    CHECK(std::abs(probability(ev, GptVector::state(vec({1, 0, 0, -1})))) < 1e-15);
  }
  SUBCASE("size mismatch") { CHECK_THROWS_AS(probability(e[0], GptVector::state(vec({1, 0, 0}))), DimensionError); }
}

TEST_CASE("validate_state") {
  const auto bit = zoo::classical_bit();
  const auto mid = validate_state(bit.states, GptVector::state(vec({1, 0})));
  CHECK(mid.member);
  REQUIRE(mid.weights.size() == 2);
  CHECK(mid.weights[0] == doctest::Approx(0.5));
  CHECK_FALSE(validate_state(bit.states, GptVector::state(vec({1, 2}))).member);
  const auto ball = ConvexSet::ball(3);
  const auto edge = validate_state(ball, GptVector::state(vec({1, 0.6, 0, 0.8})));
  CHECK(edge.member);
  CHECK(edge.boundary);
  CHECK_FALSE(validate_state(ball, GptVector::state(vec({1, 0.6, 0, 0.81}))).member);

  PredicateOptions exact;
  exact.arithmetic = lp::Arithmetic::exact;
  CHECK(validate_state(bit.states, GptVector::state(vec({1, 0.25})), exact).member);
  CHECK_FALSE(validate_state(bit.states, GptVector::state(vec({1, 1.0 + 1e-12})), exact).member);
}

TEST_CASE("is_pure") {
  const auto bit = zoo::classical_bit();
  CHECK(is_pure(bit.states, GptVector::state(vec({1, -1}))));
  CHECK_FALSE(is_pure(bit.states, GptVector::state(vec({1, 0}))));
  const double c = 1.0 / std::sqrt(3.0);
  CHECK(is_pure(ConvexSet::ball(3), GptVector::state(vec({1, c, c, c}))));
  CHECK_FALSE(is_pure(ConvexSet::ball(3), GptVector::state(vec({1, 0.5, 0, 0}))));
}

TEST_CASE("is_normalized_effect") {
  const auto ball = zoo::euclidean_ball(3);
  CHECK(is_normalized_effect(ball, zoo::ball_effect(vec({0.6, 0, 0.8}))));
  CHECK(is_normalized_effect(ball, GptVector::unit_effect(3)));
  CHECK_FALSE(is_normalized_effect(ball, GptVector::effect(vec({0.5, 0.6, 0, 0}))));
  const auto bit = zoo::classical_bit();
  CHECK(is_normalized_effect(bit, GptVector::unit_effect(1)));
  CHECK(is_normalized_effect(bit, GptVector::zero_effect(1)));
  CHECK_FALSE(is_normalized_effect(bit, GptVector::effect(vec({1, 1}))));
}

TEST_CASE("apply_map") {
  const auto bit = zoo::classical_bit();
  REQUIRE(bit.reversibles.size() == 1);
  const auto& s = bit.states.as_polytope().vertices;
  CHECK(apply_map(bit.reversibles[0], s[0]).entries().isApprox(s[1].entries()));
  const auto v = GptVector::state(vec({1, 0.2, -0.1, 0.3}));
  CHECK(apply_map(LinearMap::identity(3), v).entries() == v.entries());
  const auto rz = zoo::ball_reversible((Matrix(3, 3) << -1, 0, 0, 0, -1, 0, 0, 0, 1).finished());
  CHECK(apply_map(rz, GptVector::state(vec({1, 1, 0, 0}))).entries().isApprox(vec({1, -1, 0, 0})));
  CHECK_THROWS_AS(apply_map(rz, s[0]), DimensionError);
}

TEST_CASE("is_reversible") {
  const auto bit = zoo::classical_bit();
  CHECK(is_reversible(bit, LinearMap((Matrix(2, 2) << 1, 0, 0, -1).finished())));
  CHECK_FALSE(is_reversible(bit, LinearMap((Matrix(2, 2) << 1, 0, 0, 0).finished())));
  const auto ball = zoo::euclidean_ball(3);
  const double a = 0.7;
  Matrix o(3, 3);
  o << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  CHECK(is_reversible(ball, zoo::ball_reversible(o)));
  Matrix shear = Matrix::Identity(4, 4);
  shear(1, 2) = 0.5;
  CHECK_FALSE(is_reversible(ball, LinearMap(shear)));
}

TEST_CASE("convex_mix") {
  const auto bit = zoo::classical_bit();
  const auto& s = bit.states.as_polytope().vertices;
  CHECK(convex_mix({{0.5, s[0]}, {0.5, s[1]}}).entries().isApprox(vec({1, 0})));
  CHECK(convex_mix({{1.0, s[1]}}).entries() == s[1].entries());
  const auto trit = zoo::polygon_theory(3);
  const auto& t = trit.states.as_polytope().vertices;
  const auto centre = convex_mix({{1.0 / 3, t[0]}, {1.0 / 3, t[1]}, {1.0 / 3, t[2]}});
  CHECK((centre.entries() - vec({1, 0, 0})).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS(convex_mix({{0.7, s[0]}, {0.7, s[1]}}));
  CHECK_THROWS(convex_mix({{1.5, s[0]}, {-0.5, s[1]}}));
}

TEST_CASE("validate_theory rejects broken theories") {
  auto t = zoo::classical_bit();
  CHECK_NOTHROW(validate_theory(t));
  t.effects = EffectSpace::polytope_hull({GptVector::zero_effect(1), GptVector::unit_effect(1),
                                          GptVector::effect(vec({1, 1}))});
  CHECK_THROWS(validate_theory(t));
}
