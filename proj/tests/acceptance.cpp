// Acceptance criteria. Prints one line per criterion and exits nonzero if
// any criterion fails or runs past its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gptlab/composites.hpp"
#include "gptlab/exact.hpp"
#include "gptlab/model_zoo.hpp"
#include "gptlab/poincare_rep.hpp"
#include "gptlab/sampling.hpp"
#include "gptlab/suites.hpp"
#include "oracles/classical_oracle.hpp"
#include "oracles/quantum_oracle.hpp"

using namespace gptlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with a short reason each.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (!failures_.empty()) failures_ += "; ";
    failures_ += what;
  }
  void worst(double deviation) {
    if (std::isnan(deviation) || deviation > worst_) worst_ = deviation;
  }
  Outcome done(const std::string& summary) const {
    std::ostringstream out;
    out << summary;
    if (worst_ > 0 || std::isnan(worst_)) out << ", worst deviation " << worst_;
    if (!pass_) out << " [" << failures_ << "]";
    return {pass_, out.str()};
  }

 private:
  bool pass_ = true;
  double worst_ = 0.0;
  std::string failures_;
};

double max_abs(const Vector& v) { return v.cwiseAbs().maxCoeff(); }

// A named check from a suite must exist, pass, carry a tolerance no looser than
// `tol`, and have at least `samples` samples.
void require_check(Tally& t, const suites::SuiteResult& r, const std::string& name, double tol, std::size_t samples,
                   const std::string& label) {
  for (const auto& c : r.checks) {
    if (c.check != name) continue;
    t.worst(c.worst_deviation);
    t.expect(c.pass, label + " " + name + " failed");
    t.expect(c.tolerance <= tol, label + " " + name + " tolerance too loose");
    t.expect(c.samples >= samples, label + " " + name + " too few samples");
    return;
  }
  t.expect(false, label + " " + name + " missing");
}

Outcome exact_distinguishability() {
  Tally t;
  const auto bit = exact::rational_realization("bit");
  const auto table = exact::pairing_table(bit);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t.expect(table[i][j] == Rational(i == j ? 1 : 0), "bit delta");
  const auto trit = exact::exact_trit();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      t.expect(exact::dot(trit.effects[i], trit.states[j]) == exact::Biquadratic(Rational(i == j ? 1 : 0)),
               "trit delta");
  return t.done("bit and trit eps_i(zeta_j) = delta_ij in exact arithmetic");
}

Outcome polygon_identities() {
  Tally t;
  for (int N = 3; N <= 12; ++N) {
    const auto theory = zoo::polygon_theory(N);
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        const double p = probability(zoo::polygon_effect(N, i), zoo::polygon_state(N, j));
        t.expect(p > -1e-12 && p < 1 + 1e-12, "effect out of range");
        t.expect(is_normalized_effect(theory, zoo::polygon_complement(N, i), 1e-12), "complement invalid");
      }
      t.worst(std::abs(probability(zoo::polygon_effect(N, i), zoo::polygon_state(N, i)) - 1.0));
      t.expect(std::abs(probability(zoo::polygon_effect(N, i), zoo::polygon_state(N, i)) - 1.0) < 1e-12,
               "eps_i(zeta_i) != 1");
    }
    for (int j = 0; j < N; ++j) {
      const Matrix r = zoo::polygon_rotation(N, j).matrix();
      for (int i = 0; i < N; ++i) {
        const int k = (i + j) % N;
        const double ds = max_abs(r * zoo::polygon_state(N, i).entries() - zoo::polygon_state(N, k).entries());
        const double de = max_abs(r * zoo::polygon_effect(N, i).entries() - zoo::polygon_effect(N, k).entries());
        t.worst(std::max(ds, de));
        t.expect(ds < 1e-12 && de < 1e-12, "rotation does not permute");
      }
      const Matrix prod = r * zoo::polygon_rotation(N, (N - j) % N).matrix();
      const double di = (prod - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff();
      t.worst(di);
      t.expect(di < 1e-12, "R(j) R(N - j) != I");
    }
  }
  return t.done("polygons N = 3..12: permutations, inverse law, effect validity");
}

Outcome qubit_probabilities() {
  Tally t;
  Sampler rng(20240607);
  for (int k = 0; k < 1000; ++k) {
    const Vector r = rng.unit_vector(3);
    const Vector v = rng.unit_vector(3);
    const double p = probability(zoo::ball_effect(v), zoo::density_to_gpt({Eigen::Vector3d(r)}));
    const double d = std::abs(p - oracle::qubit_probability({r[0], r[1], r[2]}, {v[0], v[1], v[2]}));
    t.worst(d);
    t.expect(d < 1e-12, "pair " + std::to_string(k));
  }
  return t.done("1000 random pure state/effect pairs match tr(rho P)");
}

Outcome classical_and_box_chsh() {
  Tally t;
  const auto box = share(zoo::by_name("boxworld"));
  ChshOptions ex;
  ex.arithmetic = lp::Arithmetic::exact;
  const auto pr = maximize_chsh(box, box, ex);
  t.expect(std::abs(pr.value - 4.0) <= 1e-6, "box world CHSH " + std::to_string(pr.value));
  t.expect(pr.exact_value == "4", "box world exact value " + pr.exact_value);

  const auto bit = share(zoo::classical_bit());
  const auto c = maximize_chsh(bit, bit, ex);
  const double oracle_max = oracle::deterministic_chsh_max();
  t.worst(std::abs(c.value - oracle_max));
  t.expect(std::abs(c.value - oracle_max) <= 1e-9, "bit CHSH " + std::to_string(c.value));
  t.expect(c.exact_value == "2", "bit exact value " + c.exact_value);
  return t.done("box world max CHSH = " + pr.exact_value + ", classical bit = " + c.exact_value);
}

Vector spin(double angle) {
  Vector v(3);
  v << std::sin(angle), 0, std::cos(angle);
  return v;
}

BinaryMeasurement spin_measurement(const Vector& v) { return {zoo::ball_effect(v), zoo::ball_effect(-v)}; }

Outcome singlet_chsh() {
  Tally t;
  const auto phi = two_qubit_gpt(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), -Eigen::Matrix3d::Identity());
  const Vector a0 = spin(0), a1 = spin(M_PI / 2), b0 = -spin(M_PI / 4), b1 = -spin(-M_PI / 4);
  const ChshScenario sc{spin_measurement(a0), spin_measurement(a1), spin_measurement(b0), spin_measurement(b1), phi};
  const auto rho = oracle::singlet();
  auto r3 = [](const Vector& v) { return oracle::R3{v[0], v[1], v[2]}; };
  const double quantum = oracle::correlation(rho, r3(a0), r3(b0)) + oracle::correlation(rho, r3(a0), r3(b1)) +
                         oracle::correlation(rho, r3(a1), r3(b0)) - oracle::correlation(rho, r3(a1), r3(b1));
  const double value = chsh_value(sc);
  t.worst(std::abs(value - quantum));
  t.expect(std::abs(value - quantum) <= 1e-9, "differs from the trace");
  t.expect(std::abs(value - 2 * std::sqrt(2.0)) <= 1e-9, "not 2 sqrt2");
  const auto cert = certify_entanglement(phi, sc);
  t.expect(cert.kind == EntanglementKind::entangled_chsh_witness, "certificate " + to_string(cert.kind));
  t.expect(cert.lp.resolution >= 200, "sampled resolution below 200");
  return t.done("singlet CHSH = " + std::to_string(value) + ", verdict " + to_string(cert.kind));
}

Outcome minkowski_invariants() {
  Tally t;
  for (int n : {2, 3, 4}) {
    suites::SuiteConfig cfg;
    cfg.n = n;
    cfg.samples = 100;
    const auto r = suites::minkowski_checks(cfg);
    const std::string label = "n=" + std::to_string(n);
    require_check(t, r, "interval-invariance", 1e-9, 100, label);
    require_check(t, r, "mass-shell", 1e-9, 100, label);
    t.expect(r.pass(), label + " suite failed");
  }
  return t.done("interval and mass shell preserved for n = 2, 3, 4");
}

Outcome little_group() {
  Tally t;
  for (int n : {2, 3, 4}) {
    suites::SuiteConfig cfg;
    cfg.n = n;
    cfg.samples = 100;
    const auto r = suites::little_group_checks(cfg);
    const std::string label = "n=" + std::to_string(n);
    require_check(t, r, "little-group-stabilizer", 1e-9, 200, label);
    require_check(t, r, "little-group-translation", 1e-9, 200, label);
    require_check(t, r, "wigner-rotation-so-n", 1e-9, 200, label);
    require_check(t, r, "pure-rotation-reduction", 1e-9, 100, label);
    require_check(t, r, "little-group-composition", 1e-8, 100, label);
    t.expect(r.pass(), label + " suite failed");
  }
  return t.done("little group stabilizer, rotation reduction, SO(n), composition");
}

Outcome probability_invariance() {
  Tally t;
  for (int n : {2, 3, 4}) {
    suites::SuiteConfig cfg;
    cfg.n = n;
    cfg.samples = 100;
    const auto r = suites::invariance_checks(cfg);
    const std::string label = "n=" + std::to_string(n);
    require_check(t, r, "probability-invariance", 1e-10, 200, label);
    require_check(t, r, "detector-sphere", 1e-10, 1, label);
    require_check(t, r, "detector-normalization", 1e-12, 1, label);
    require_check(t, r, "mismatched-rep-detected", 0.0, 1, label);
    t.expect(r.pass(), label + " suite failed");
  }
  return t.done("200 triples per n, detector sphere");
}

Outcome toy_spacetime() {
  Tally t;
  int runs = 0;
  for (int N = 3; N <= 12; ++N)
    for (int k = 1; k < N; ++k) {
      const auto r = suites::toy_spacetime_checks(N, k);
      const std::string label = "N=" + std::to_string(N) + " k=" + std::to_string(k);
      for (const auto& c : r.checks) {
        t.worst(c.worst_deviation);
        t.expect(c.tolerance <= 1e-12, label + " " + c.check + " tolerance too loose");
      }
      require_check(t, r, "toy-nontrivial", 0.0, 1, label);
      t.expect(r.pass(), label + " failed");
      ++runs;
    }
  return t.done(std::to_string(runs) + " (N, k) pairs with N <= 12, all translations");
}

Outcome ball_orbits() {
  Tally t;
  Sampler rng(7);
  for (int n : {2, 3, 4}) {
    const auto checks = rep::orbit_ball_reconstruction(n, rng.unit_vector(n), 200, 11 + n, 1e-10);
    const std::string label = "n=" + std::to_string(n);
    for (const char* name : {"orbit-purity", "effect-orbit", "antipodal-distinguishability"}) {
      bool found = false;
      for (const auto& c : checks) {
        if (c.check != name) continue;
        found = true;
        t.worst(c.worst_deviation);
        t.expect(c.pass, label + " " + name + " failed");
        t.expect(c.tolerance <= 1e-10, label + " " + name + " tolerance too loose");
      }
      t.expect(found, label + " " + name + " missing");
    }
    t.expect(all_pass(checks), label + " orbit checks failed");
  }
  return t.done("pure ball orbits for n = 2, 3, 4");
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact distinguishability", 1, exact_distinguishability},
      {2, "polygon identities", 5, polygon_identities},
      {3, "qubit probabilities", 5, qubit_probabilities},
      {4, "classical and box world CHSH", 60, classical_and_box_chsh},
      {5, "singlet CHSH and entanglement", 60, singlet_chsh},
      {6, "Minkowski invariants", 10, minkowski_invariants},
      {7, "little group", 30, little_group},
      {8, "probability invariance", 10, probability_invariance},
      {9, "toy spacetime", 5, toy_spacetime},
      {10, "ball orbits", 10, ball_orbits},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool ok = o.pass && in_time;
    if (!ok) ++failed;
    std::printf("[%s] criterion %d: %s: %s (%.3f s, limit %.0f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : ", exceeded");
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
