#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gptlab/composites.hpp"
#include "gptlab/errors.hpp"
#include "gptlab/model_zoo.hpp"
#include "gptlab/sampling.hpp"
#include "oracles/classical_oracle.hpp"
#include "oracles/quantum_oracle.hpp"

using namespace gptlab;

namespace {

Vector spin(double angle) {
  Vector v(3);
  v << std::sin(angle), 0, std::cos(angle);
  return v;
}

BinaryMeasurement spin_measurement(const Vector& v) { return {zoo::ball_effect(v), zoo::ball_effect(-v)}; }

oracle::R3 r3(const Vector& v) { return {v[0], v[1], v[2]}; }

JointState singlet() { return two_qubit_gpt(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), -Eigen::Matrix3d::Identity()); }

// Standard angles; B's outcome labels are swapped so the value is +2 sqrt2.
ChshScenario tsirelson_scenario() {
  return {spin_measurement(spin(0)), spin_measurement(spin(M_PI / 2)), spin_measurement(-spin(M_PI / 4)),
          spin_measurement(-spin(-M_PI / 4)), singlet()};
}

}  // namespace

TEST_CASE("tensor products") {
  const auto bit = share(zoo::classical_bit());
  const auto& s = bit->states.as_polytope().vertices;
  CHECK(tensor(s[0], s[0]) == (Vector(4) << 1, -1, -1, 1).finished());

  const auto trit = share(zoo::polygon_theory(3));
  const auto ball = share(zoo::euclidean_ball(3));
  Sampler rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto z = zoo::polygon_state(3, k % 3);
    const auto z2 = GptVector::state_from_spatial(rng.ball_point(3));
    const auto e = zoo::polygon_effect(3, (k + 1) % 3);
    const auto e2 = zoo::ball_effect(rng.unit_vector(3));
    CHECK(std::abs(tensor(e, e2).dot(tensor(z, z2)) - probability(e, z) * probability(e2, z2)) < 1e-12);
    const auto phi = JointState::product(z, z2, trit, ball);
    CHECK(phi.pairing(GptVector::unit_effect(2), GptVector::unit_effect(3)) == doctest::Approx(1.0));
    CHECK((phi.marginal_a() - z.entries()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((phi.marginal_b() - z2.entries()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(JointState(2 * tensor(s[0], s[1]), bit, bit), DomainError);
}

TEST_CASE("separability of product states and their mixtures") {
  const auto p5 = share(zoo::polygon_theory(5));
  const auto phi = JointState::product(zoo::polygon_state(5, 1), zoo::polygon_state(5, 3), p5, p5);
  const auto v = is_separable(phi);
  REQUIRE(v.kind == Separability::separable);
  REQUIRE(v.weights.size() == 1);
  CHECK(v.weights[0].a == 1);
  CHECK(v.weights[0].b == 3);
  CHECK(v.weights[0].weight == doctest::Approx(1.0));

  Sampler rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int count = 1 + trial % 5;
    Vector mix = Vector::Zero(9);
    double total = 0;
    std::vector<double> w;
    for (int k = 0; k < count; ++k) w.push_back(rng.uniform(0.1, 1.0)), total += w.back();
    for (int k = 0; k < count; ++k) {
      const auto a = convex_mix({{0.5, zoo::polygon_state(5, k)}, {0.5, zoo::polygon_state(5, (k + 2) % 5)}});
      mix += (w[k] / total) * tensor(a, zoo::polygon_state(5, (3 * k) % 5));
    }
    CHECK(is_separable(JointState(mix, p5, p5)).kind == Separability::separable);
  }
  SeparabilityOptions ex;
  ex.arithmetic = lp::Arithmetic::exact;
  CHECK(is_separable(phi, ex).kind == Separability::separable);
}

TEST_CASE("max tensor membership") {
  const auto ball = share(zoo::euclidean_ball(3));
  const auto prod = JointState::product(GptVector::state_from_spatial(spin(0.3)), GptVector::state_from_spatial(spin(1.1)),
                                        ball, ball);
  CHECK(in_max_tensor(prod));
  CHECK_FALSE(in_max_tensor(JointState::unchecked(2 * prod.vector(), ball, ball)));
  CHECK_FALSE(max_tensor_report(JointState::unchecked(2 * prod.vector(), ball, ball)).member);
  CHECK(in_max_tensor(singlet()));
  // Positive on products but not a quantum state: the transpose of the singlet.
  CHECK(in_max_tensor(two_qubit_gpt(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), Eigen::Matrix3d::Zero())));
}

TEST_CASE("PR box") {
  const auto box = share(zoo::by_name("boxworld"));
  ChshOptions opts;
  opts.arithmetic = lp::Arithmetic::exact;
  const auto pr = maximize_chsh(box, box, opts);
  CHECK(pr.value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(pr.exact_value == "4");
  CHECK(std::abs(chsh_value(pr.scenario()) - 4.0) < 1e-9);
  CHECK(in_max_tensor(pr.witness));
  CHECK(no_signalling_check(pr.witness));

  SeparabilityOptions so;
  so.arithmetic = lp::Arithmetic::exact;
  const auto sep = is_separable(pr.witness, so);
  CHECK(sep.kind == Separability::entangled);
  CHECK(sep.certificate_verified);

  // One entry moved by 0.1 leaves the max tensor product and fails the check.
  Vector bad = pr.witness.vector();
  bad[4] += 0.1;
  const auto corrupted = JointState::unchecked(bad, box, box);
  CHECK_FALSE(no_signalling_check(corrupted));

  const auto fa = default_measurements(*box);
  auto table = correlation_table(pr.witness, fa, fa);
  CHECK(no_signalling_table(table));
  table.at(0, 0, 0, 0) += 0.1;
  table.at(0, 0, 0, 1) -= 0.1;
  CHECK_FALSE(no_signalling_table(table));
}

TEST_CASE("no-signalling of product states") {
  const auto p4 = share(zoo::polygon_theory(4));
  const auto ball = share(zoo::euclidean_ball(3));
  CHECK(no_signalling_check(JointState::product(zoo::polygon_state(4, 2), zoo::polygon_state(4, 1), p4, p4)));
  CHECK(no_signalling_check(JointState::product(zoo::polygon_state(4, 2), GptVector::state_from_spatial(spin(0.4)), p4, ball)));
}

TEST_CASE("deterministic strategies reach CHSH 2") {
  const auto bit = share(zoo::classical_bit());
  const auto e = bit->effects.extremal();
  const BinaryMeasurement keep{e[0], e[1]};
  const BinaryMeasurement flip{e[1], e[0]};
  const auto phi = JointState::product(bit->states.as_polytope().vertices[0], bit->states.as_polytope().vertices[0], bit, bit);
  int best = -4;
  for (int s = 0; s < 16; ++s) {
    const ChshScenario sc{s & 1 ? keep : flip, s & 2 ? keep : flip, s & 4 ? keep : flip, s & 8 ? keep : flip, phi};
    const double v = chsh_value(sc);
    CHECK(v == doctest::Approx(oracle::chsh_of_strategy(s)));
    best = std::max(best, static_cast<int>(std::lround(v)));
  }
  CHECK(best == oracle::deterministic_chsh_max());
  CHECK(best == 2);
}

TEST_CASE("malformed measurement pairs are rejected") {
  const auto bit = share(zoo::classical_bit());
  const auto e = bit->effects.extremal();
  const auto phi = JointState::product(bit->states.as_polytope().vertices[0], bit->states.as_polytope().vertices[1], bit, bit);
  const BinaryMeasurement ok{e[0], e[1]};
  const BinaryMeasurement broken{e[0], e[0]};
  CHECK_THROWS_AS(chsh_value({ok, broken, ok, ok, phi}), DomainError);
}

TEST_CASE("singlet against the two-qubit trace") {
  const auto phi = singlet();
  const auto rho = oracle::singlet();
  Sampler rng(21);
  for (int k = 0; k < 100; ++k) {
    const Vector a = rng.unit_vector(3);
    const Vector b = rng.unit_vector(3);
    const double gpt = phi.pairing(zoo::ball_effect(a), zoo::ball_effect(b));
    CHECK(std::abs(gpt - oracle::joint_probability(rho, r3(a), r3(b))) < 1e-12);
    CHECK(std::abs(gpt - 0.25 * (1 - a.dot(b))) < 1e-12);
    CHECK(std::abs(correlator(phi, spin_measurement(a), spin_measurement(b)) - oracle::correlation(rho, r3(a), r3(b))) <
          1e-12);
  }
  const auto sc = tsirelson_scenario();
  const double quantum = oracle::correlation(rho, r3(spin(0)), r3(-spin(M_PI / 4))) +
                         oracle::correlation(rho, r3(spin(0)), r3(-spin(-M_PI / 4))) +
                         oracle::correlation(rho, r3(spin(M_PI / 2)), r3(-spin(M_PI / 4))) -
                         oracle::correlation(rho, r3(spin(M_PI / 2)), r3(-spin(-M_PI / 4)));
  CHECK(std::abs(chsh_value(sc) - quantum) < 1e-9);
  CHECK(std::abs(chsh_value(sc) - 2 * std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("two-qubit embedding") {
  const auto mixed = two_qubit_gpt(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), Eigen::Matrix3d::Zero());
  Vector expected = Vector::Zero(16);
  expected[0] = 1;
  CHECK(mixed.vector() == expected);
  CHECK_THROWS_AS(two_qubit_gpt(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), -2 * Eigen::Matrix3d::Identity()),
                  DomainError);
}

TEST_CASE("singlet is certified entangled by its CHSH witness") {
  const auto cert = certify_entanglement(singlet(), tsirelson_scenario());
  CHECK(cert.kind == EntanglementKind::entangled_chsh_witness);
  CHECK(cert.lp.kind == Separability::inconclusive);
  CHECK(cert.lp.resolution == 200);
  CHECK(cert.lp.infeasibility > 0);
  REQUIRE(cert.chsh);
  CHECK(*cert.chsh > 2.8);

  const auto ball = share(zoo::euclidean_ball(3));
  const auto mixed = JointState::product(GptVector::state_from_spatial(0.5 * spin(0.3)),
                                         GptVector::state_from_spatial(0.5 * spin(2.0)), ball, ball);
  CHECK(certify_entanglement(mixed, std::nullopt).kind == EntanglementKind::separable);
  // Pure ball states off the sample grid are outside the sampled hull.
  const auto pure = JointState::product(GptVector::state_from_spatial(spin(0.3)), GptVector::state_from_spatial(spin(2.0)),
                                        ball, ball);
  CHECK(certify_entanglement(pure, std::nullopt).kind == EntanglementKind::inconclusive);
}

TEST_CASE("CHSH maxima over the max tensor product") {
  const auto bit = share(zoo::classical_bit());
  ChshOptions ex;
  ex.arithmetic = lp::Arithmetic::exact;
  const auto c = maximize_chsh(bit, bit, ex);
  CHECK(c.exact_value == "2");
  CHECK(std::abs(c.value - 2.0) < 1e-9);
  CHECK(std::abs(maximize_chsh(bit, bit).value - 2.0) < 1e-9);

  const auto p3 = share(zoo::polygon_theory(3));
  const double v3 = maximize_chsh(p3, p3).value;
  CHECK(v3 >= 2.0 - 1e-9);
  CHECK(v3 <= 4.0 + 1e-9);
  CHECK(v3 == doctest::Approx(2.0).epsilon(1e-9));

  const auto p5 = share(zoo::polygon_theory(5));
  CHECK(maximize_chsh(p5, p5).value == doctest::Approx(2.68328).epsilon(1e-5));
}

TEST_CASE("max tensor vertices") {
  const auto bit = zoo::classical_bit();
  CHECK(max_tensor_vertices(bit, bit).size() == 4);
  // 16 deterministic boxes plus 8 PR boxes.
  const auto box = zoo::by_name("boxworld");
  CHECK(max_tensor_vertices(box, box).size() == 24);
}

TEST_CASE("redundant generators are removed") {
  std::vector<Vector> g{(Vector(2) << 1, 0).finished(), (Vector(2) << 0, 1).finished(), (Vector(2) << 1, 1).finished(),
                        (Vector(2) << 2, 0).finished(), Vector::Zero(2)};
  CHECK(irredundant_rays(g).size() == 2);
}

TEST_CASE("sphere covering radius shrinks with more points") {
  const double coarse = sphere_covering_radius(3, sphere_points(3, 20));
  const double fine = sphere_covering_radius(3, sphere_points(3, 200));
  CHECK(fine < coarse);
  CHECK(fine > 0);
}
