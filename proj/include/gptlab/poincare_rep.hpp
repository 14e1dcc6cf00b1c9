#pragma once

// Systems carrying a classical momentum label and an internal GPT state,
// their behaviour under Poincare frame changes, and small worked models: a
// detector sphere around a source, a discrete toy spacetime acting on a
// polygon theory, and orbits of pure states of a Euclidean ball.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/composites.hpp"
#include "gptlab/gpt_core.hpp"
#include "gptlab/minkowski.hpp"
#include "gptlab/report.hpp"

namespace gptlab::rep {

using spacetime::LorentzMatrix;
using spacetime::MassiveMomentum;
using spacetime::PoincareTransform;

struct ClassicalMomentumState {
  MassiveMomentum p;
  GptVector internal;
  TheoryRef theory;

  /// Throws DomainError when `internal` is not a state of `theory`.
  static ClassicalMomentumState make(MassiveMomentum p, GptVector internal, TheoryRef theory);
};

struct ClassicalMomentumEffect {
  MassiveMomentum p_label;
  GptVector internal;
  TheoryRef theory;

  /// Throws DomainError when `internal` is not a normalized effect of `theory`.
  static ClassicalMomentumEffect make(MassiveMomentum p, GptVector internal, TheoryRef theory);
};

inline constexpr double kMomentumTol = 1e-9;

/// e . z when the momentum labels agree within p_tol (max norm), else exactly 0.
double classical_pairing(const ClassicalMomentumEffect& e, const ClassicalMomentumState& z,
                         double p_tol = kMomentumTol);

/// Assignment of internal maps to group elements. When `effect` is empty the
/// effect map is the transpose-inverse of the state map.
template <class G>
struct RepMap {
  std::function<Matrix(const G&)> state;
  std::function<Matrix(const G&)> effect;

  Matrix state_map(const G& g) const { return state(g); }
  Matrix effect_map(const G& g) const {
    if (effect) return effect(g);
    return state(g).inverse().transpose();
  }
};

template <class G>
struct GroupSample {
  std::vector<G> elements;
  std::function<G(const G&, const G&)> compose;  // compose(g2, g1): g1 first
  G identity;
};

struct RepresentationReport {
  CheckReport composition;
  CheckReport identity;
  /// Every sampled state map equals the identity.
  bool trivial = false;
  bool pass() const { return composition.pass && identity.pass; }
};

/// R(g2) R(g1) = R(g2 g1) for all sampled pairs and R(e) = I, for both the
/// state and effect maps.
template <class G>
RepresentationReport check_representation(const GroupSample<G>& sample, const RepMap<G>& rep, double tol) {
  RepresentationReport out;
  out.composition = CheckReport("representation-composition", "R(g2) R(g1) = R(g2 g1) on sampled pairs", tol);
  out.identity = CheckReport("representation-identity", "R(identity) is the identity map", tol);
  const Matrix rs = rep.state_map(sample.identity);
  const Matrix re = rep.effect_map(sample.identity);
  out.identity.observe((rs - Matrix::Identity(rs.rows(), rs.cols())).cwiseAbs().maxCoeff());
  out.identity.observe((re - Matrix::Identity(re.rows(), re.cols())).cwiseAbs().maxCoeff());
  out.trivial = true;
  for (const auto& g : sample.elements) {
    const Matrix m = rep.state_map(g);
    if ((m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() > tol) out.trivial = false;
  }
  for (const auto& g2 : sample.elements)
    for (const auto& g1 : sample.elements) {
      const G g = sample.compose(g2, g1);
      out.composition.observe((rep.state_map(g2) * rep.state_map(g1) - rep.state_map(g)).cwiseAbs().maxCoeff());
      out.composition.observe((rep.effect_map(g2) * rep.effect_map(g1) - rep.effect_map(g)).cwiseAbs().maxCoeff());
    }
  return out;
}

/// block-diag(1, O) for a Poincare transform whose Lorentz part is a pure
/// rotation O; throws DomainError elsewhere (the representation is undefined).
RepMap<PoincareTransform> fundamental_rep(int n, double tol = 1e-9);
/// Every element acts as the identity on a (d+1)-dimensional internal space.
RepMap<PoincareTransform> trivial_rep(int d);
/// Internal action of the Wigner rotation of the Lorentz part at momentum p.
RepMap<PoincareTransform> induced_rep(const MassiveMomentum& p);
/// Fixed map M for every element, with effect map `effect` (for building
/// deliberately inconsistent pairs).
RepMap<PoincareTransform> constant_rep(const Matrix& state, const Matrix& effect);

/// (lambda p, R^st(P) zeta)
ClassicalMomentumState transform_classical(const PoincareTransform& p, const ClassicalMomentumState& z,
                                           const RepMap<PoincareTransform>& rep);
/// (lambda p, R^ef(P) eps)
ClassicalMomentumEffect transform_classical(const PoincareTransform& p, const ClassicalMomentumEffect& e,
                                            const RepMap<PoincareTransform>& rep);

using EffectStatePair = std::pair<ClassicalMomentumEffect, ClassicalMomentumState>;

/// |E'[Z'] - E[Z]| for every pair, with worst deviation.
CheckReport invariance_report(const std::vector<EffectStatePair>& pairs, const PoincareTransform& p,
                              const RepMap<PoincareTransform>& rep, double tol);
bool check_invariance(const std::vector<EffectStatePair>& pairs, const PoincareTransform& p,
                      const RepMap<PoincareTransform>& rep, double tol);

struct DetectorExperiment {
  /// Detector effects w_i (1/2)(1, v_i).
  std::vector<GptVector> effects;
  std::vector<double> weights;
  std::vector<double> before;
  std::vector<double> after;
  /// max_i |P'(i) - P(i)|
  double worst_deviation = 0.0;
  double total_before = 0.0;
  double total_after = 0.0;
};

/// Detectors covering a sphere around a source in internal state z (ball of
/// dimension 3). Weights are the minimum-norm least-squares solution of
/// sum_i eps_i = u; throws DomainError when the residual exceeds 1e-9 or a
/// weight falls outside [0, 1]. The after-distribution is evaluated in the
/// frame rotated by `rotation`.
DetectorExperiment detector_sphere_experiment(const GptVector& z, const std::vector<Eigen::Vector3d>& detectors,
                                              const Eigen::Matrix3d& rotation);

struct ToySpacetime {
  int N = 0;
  int k = 0;
  /// Internal map assigned to T_k.
  Matrix rotation;
  /// State i goes to state permutation[i].
  std::vector<int> permutation;
  RepMap<int> rep;
  std::vector<CheckReport> checks;
  /// The representation is not the trivial one.
  bool nontrivial = false;
  bool pass() const { return all_pass(checks) && nontrivial; }
};

/// Translations T_k of a lattice acting on the polygon theory of order N by
/// k -> R(k 2pi/N). Checks homomorphism (all k1, k2 in 0..N-1), periodicity,
/// probability invariance and the induced permutation of pure states.
ToySpacetime toy_discrete_spacetime(int N, int k, double tol = 1e-12);

/// Orbit of the pure state (1, r) of the n-ball under sampled rotations:
/// purity of the orbit, hull samples inside the ball, transitivity, rotated
/// extremal effects, and perfect distinguishability of antipodal pairs.
std::vector<CheckReport> orbit_ball_reconstruction(int n, const Vector& r, int rotations, std::uint64_t seed,
                                                   double tol = 1e-10);

}  // namespace gptlab::rep
