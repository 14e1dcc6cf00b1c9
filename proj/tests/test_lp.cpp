#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gptlab/lp.hpp"

using namespace gptlab;

namespace {

// Beale's example: Dantzig's rule with naive tie-breaking cycles on it.
template <class S>
lp::Problem<S> beale() {
  lp::Problem<S> p;
  p.A = {{S(1), S(0), S(0), S(1) / 4, S(-8), S(-1), S(9)},
         {S(0), S(1), S(0), S(1) / 2, S(-12), S(-1) / 2, S(3)},
         {S(0), S(0), S(1), S(0), S(0), S(1), S(0)}};
  p.b = {S(0), S(0), S(1)};
  p.c = {S(0), S(0), S(0), S(-3) / 4, S(20), S(-1) / 2, S(6)};
  return p;
}

}  // namespace

TEST_CASE("small feasible problem") {
  // min -x - y, x + y + s = 4, x - y + t = 1
  lp::Problem<double> p{{{1, 1, 1, 0}, {1, -1, 0, 1}}, {4, 1}, {-1, -1, 0, 0}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.objective == doctest::Approx(-4));
  const auto e = lp::solve(lp::to_rational(p));
  REQUIRE(e.status == lp::Status::optimal);
  CHECK(e.objective == Rational(-4));
}

TEST_CASE("degenerate problem terminates with the exact optimum") {
  const auto e = lp::solve(beale<Rational>());
  REQUIRE(e.status == lp::Status::optimal);
  CHECK(e.objective == Rational(-5, 4));
  const auto f = lp::solve(beale<double>());
  REQUIRE(f.status == lp::Status::optimal);
  CHECK(f.objective == doctest::Approx(-1.25));
}

TEST_CASE("infeasible problem yields a checkable Farkas vector") {
  // x + y = 1 and x + y = 2
  lp::Problem<Rational> p{{{1, 1}, {1, 1}}, {1, 2}, {0, 0}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::infeasible);
  CHECK(s.infeasibility > 0);
  CHECK(lp::verify_farkas(p, s.farkas));
  CHECK_FALSE(lp::verify_farkas(p, std::vector<Rational>{1, 1}));

  lp::Problem<double> q{{{1, 1}, {1, 1}}, {1, 2}, {0, 0}};
  const auto f = lp::solve(q);
  REQUIRE(f.status == lp::Status::infeasible);
  CHECK(lp::verify_farkas(q, f.farkas, 1e-9));
}

TEST_CASE("unbounded problem") {
  // min -x with x - y = 0
  lp::Problem<double> p{{{1, -1}}, {0}, {-1, 0}};
  CHECK(lp::solve(p).status == lp::Status::unbounded);
  CHECK(lp::solve(lp::to_rational(p)).status == lp::Status::unbounded);
}

TEST_CASE("negative right-hand sides are handled") {
  // -x = -3
  lp::Problem<Rational> p{{{-1}}, {-3}, {1}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.x[0] == 3);
}
