#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gptlab/composites.hpp"
#include "gptlab/exact.hpp"
#include "gptlab/model_zoo.hpp"

using namespace gptlab;
using exact::Biquadratic;

TEST_CASE("Q(sqrt2, sqrt3) arithmetic") {
  const auto r2 = Biquadratic::sqrt2();
  const auto r3 = Biquadratic::sqrt3();
  CHECK(r2 * r2 == Biquadratic(Rational(2)));
  CHECK(r3 * r3 == Biquadratic(Rational(3)));
  CHECK(r2 * r3 == Biquadratic(0, 0, 0, 1));
  CHECK((r2 * r3) * (r2 * r3) == Biquadratic(Rational(6)));
  CHECK((r2 + r3) * (r2 - r3) == Biquadratic(Rational(-1)));
  CHECK((r2 * r3).to_double() == doctest::Approx(std::sqrt(6.0)));
  CHECK_FALSE(r2.is_rational());
  CHECK((r2 * r2).is_rational());
}

TEST_CASE("trit distinguishes its pure states exactly") {
  const auto t = exact::exact_trit();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const auto p = exact::dot(t.effects[i], t.states[j]);
      CHECK(p == Biquadratic(Rational(i == j ? 1 : 0)));
    }
  exact::BiquadraticVector sum(3);
  for (const auto& e : t.effects)
    for (std::size_t k = 0; k < 3; ++k) sum[k] = sum[k] + e[k];
  CHECK(sum == t.unit);

  // The exact data is the floating polygon of order 3.
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(t.states[i][k].to_double() == doctest::Approx(zoo::polygon_state(3, i)[k]).epsilon(1e-14));
      CHECK(t.effects[i][k].to_double() == doctest::Approx(zoo::polygon_effect(3, i)[k]).epsilon(1e-14));
    }
}

TEST_CASE("bit pairing table is the identity in exact arithmetic") {
  const auto bit = exact::rational_realization("bit");
  const auto table = exact::pairing_table(bit);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(table[i][j] == Rational(i == j ? 1 : 0));
  CHECK(bit.states[0] == exact::RationalVector{1, -1});
  CHECK(bit.effects[0] == exact::RationalVector{Rational(1, 2), Rational(-1, 2)});
}

TEST_CASE("rational frames reproduce the floating pairing tables") {
  for (const char* name : {"bit", "simplex:2", "simplex:4", "boxworld", "polygon:4"}) {
    CAPTURE(name);
    REQUIRE(exact::has_rational_realization(name));
    const auto r = exact::rational_realization(name);
    const auto f = zoo::by_name(name);
    const auto& fs = f.states.as_polytope().vertices;
    const auto fe = f.effects.extremal();
    REQUIRE(r.states.size() == fs.size());
    REQUIRE(r.effects.size() == fe.size());
    const auto table = exact::pairing_table(r);
    for (std::size_t i = 0; i < fe.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j)
        CHECK(std::abs(table[i][j].convert_to<double>() - probability(fe[i], fs[j])) < 1e-12);
    // The frame maps floating states onto rational ones.
    for (std::size_t j = 0; j < fs.size(); ++j)
      CHECK((r.frame * fs[j].entries() - exact::to_vector(r.states[j])).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_FALSE(exact::has_rational_realization("polygon:5"));
  CHECK_FALSE(exact::has_rational_realization("ball:3"));
  CHECK_THROWS(exact::rational_realization("ball:3"));
}

TEST_CASE("fully rational CHSH optimum") {
  const auto box = exact::rational_realization("boxworld");
  const auto pr = maximize_chsh_exact(box, box);
  CHECK(pr.value == Rational(4));
  const auto sep = is_separable_exact(pr.witness, box, box);
  CHECK(sep.kind == Separability::entangled);
  CHECK(sep.certificate_verified);

  const auto bit = exact::rational_realization("bit");
  const auto cl = maximize_chsh_exact(bit, bit);
  CHECK(cl.value == Rational(2));
  CHECK(is_separable_exact(cl.witness, bit, bit).kind == Separability::separable);
}
