#include "gptlab/poincare_rep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gptlab/errors.hpp"
#include "gptlab/model_zoo.hpp"
#include "gptlab/sampling.hpp"

namespace gptlab::rep {

namespace {

void same_theory(const TheoryRef& a, const TheoryRef& b) {
  if (!a || !b) throw DomainError("missing internal theory");
  if (a != b && (a->d != b->d || a->name != b->name))
    throw DomainError("internal theories differ: '" + a->name + "' and '" + b->name + "'");
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

GptVector mapped_state(const Matrix& m, const GptVector& s) {
  if (m.cols() != s.size()) throw DimensionError("representation size does not match the internal space");
  Vector v = m * s.entries();
  if (std::abs(v[0] - 1.0) > 1e-9) throw DomainError("representation does not preserve normalization");
  v[0] = 1.0;
  return GptVector::state(std::move(v));
}

}  // namespace

ClassicalMomentumState ClassicalMomentumState::make(MassiveMomentum p, GptVector internal, TheoryRef theory) {
  if (!theory) throw DomainError("ClassicalMomentumState: missing theory");
  if (!validate_state(theory->states, internal).member)
    throw DomainError("ClassicalMomentumState: internal vector is not a state of '" + theory->name + "'");
  return {std::move(p), std::move(internal), std::move(theory)};
}

ClassicalMomentumEffect ClassicalMomentumEffect::make(MassiveMomentum p, GptVector internal, TheoryRef theory) {
  if (!theory) throw DomainError("ClassicalMomentumEffect: missing theory");
  if (!is_normalized_effect(*theory, internal))
    throw DomainError("ClassicalMomentumEffect: internal vector is not a normalized effect of '" + theory->name + "'");
  return {std::move(p), GptVector::effect(internal.entries()), std::move(theory)};
}

double classical_pairing(const ClassicalMomentumEffect& e, const ClassicalMomentumState& z, double p_tol) {
  same_theory(e.theory, z.theory);
  if (e.p_label.n() != z.p.n()) throw DimensionError("classical_pairing: momentum dimensions differ");
  const double gap = (e.p_label.p().entries() - z.p.p().entries()).cwiseAbs().maxCoeff();
  if (gap > p_tol) return 0.0;
  return probability(e.internal, z.internal);
}

RepMap<PoincareTransform> fundamental_rep(int n, double tol) {
  RepMap<PoincareTransform> rep;
  rep.state = [n, tol](const PoincareTransform& p) -> Matrix {
    if (p.n() != n) throw DimensionError("fundamental_rep: dimension mismatch");
    const Matrix& l = p.lambda.matrix();
    if (max_abs(l.row(0).tail(n)) > tol || max_abs(l.col(0).tail(n)) > tol || std::abs(l(0, 0) - 1.0) > tol)
      throw DomainError("fundamental_rep: undefined for transforms that are not pure rotations");
    return l;
  };
  return rep;
}

RepMap<PoincareTransform> trivial_rep(int d) {
  RepMap<PoincareTransform> rep;
  rep.state = [d](const PoincareTransform&) -> Matrix { return Matrix::Identity(d + 1, d + 1); };
  return rep;
}

RepMap<PoincareTransform> induced_rep(const MassiveMomentum& p) {
  RepMap<PoincareTransform> rep;
  rep.state = [p](const PoincareTransform& g) -> Matrix { return spacetime::wigner_rotation(g.lambda, p).matrix(); };
  return rep;
}

RepMap<PoincareTransform> constant_rep(const Matrix& state, const Matrix& effect) {
  RepMap<PoincareTransform> rep;
  rep.state = [state](const PoincareTransform&) { return state; };
  rep.effect = [effect](const PoincareTransform&) { return effect; };
  return rep;
}

ClassicalMomentumState transform_classical(const PoincareTransform& p, const ClassicalMomentumState& z,
                                           const RepMap<PoincareTransform>& rep) {
  return {spacetime::transform(p.lambda, z.p), mapped_state(rep.state_map(p), z.internal), z.theory};
}

ClassicalMomentumEffect transform_classical(const PoincareTransform& p, const ClassicalMomentumEffect& e,
                                            const RepMap<PoincareTransform>& rep) {
  const Matrix m = rep.effect_map(p);
  if (m.cols() != e.internal.size()) throw DimensionError("representation size does not match the internal space");
  return {spacetime::transform(p.lambda, e.p_label), GptVector::effect(m * e.internal.entries()), e.theory};
}

CheckReport invariance_report(const std::vector<EffectStatePair>& pairs, const PoincareTransform& p,
                              const RepMap<PoincareTransform>& rep, double tol) {
  CheckReport report("probability-invariance", "outcome probabilities are unchanged by a change of frame", tol);
  for (const auto& [e, z] : pairs) {
    const double before = classical_pairing(e, z);
    const double after = classical_pairing(transform_classical(p, e, rep), transform_classical(p, z, rep));
    report.observe(std::abs(after - before));
  }
  return report;
}

bool check_invariance(const std::vector<EffectStatePair>& pairs, const PoincareTransform& p,
                      const RepMap<PoincareTransform>& rep, double tol) {
  return invariance_report(pairs, p, rep, tol).pass;
}

DetectorExperiment detector_sphere_experiment(const GptVector& z, const std::vector<Eigen::Vector3d>& detectors,
                                              const Eigen::Matrix3d& rotation) {
  if (z.size() != 4) throw DimensionError("detector_sphere_experiment: internal state must live in the 3-ball");
  if (!validate_state(ConvexSet::ball(3), z).member) throw DomainError("detector_sphere_experiment: not a state");
  if (detectors.empty()) throw DomainError("detector_sphere_experiment: no detectors");
  if ((rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(rotation.determinant() - 1.0) > 1e-9)
    throw DomainError("detector_sphere_experiment: frame change is not a rotation");

  const auto count = static_cast<Eigen::Index>(detectors.size());
  Matrix a(4, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::Vector3d& v = detectors[static_cast<std::size_t>(i)];
    if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("detector_sphere_experiment: detector axis is not a unit vector");
    a(0, i) = 0.5;
    a.block<3, 1>(1, i) = 0.5 * v;
  }
  const Vector u = Vector::Unit(4, 0);
  const Vector w = a.completeOrthogonalDecomposition().solve(u);
  if ((a * w - u).norm() > 1e-9) throw DomainError("detector_sphere_experiment: detector effects cannot sum to u");
  if (w.minCoeff() < -1e-12 || w.maxCoeff() > 1.0 + 1e-12)
    throw DomainError("detector_sphere_experiment: detector weights outside [0, 1]");

  Matrix frame = Matrix::Identity(4, 4);
  frame.bottomRightCorner(3, 3) = rotation;
  // Orthogonal frame: the effect map (frame^{-1})^T equals frame.
  const Matrix effect_frame = frame.inverse().transpose();
  const GptVector z_after = mapped_state(frame, z);

  DetectorExperiment out;
  for (Eigen::Index i = 0; i < count; ++i) {
    const GptVector e = GptVector::effect(w[i] * a.col(i));
    out.effects.push_back(e);
    out.weights.push_back(w[i]);
    const double before = probability(e, z);
    const double after = probability(GptVector::effect(effect_frame * e.entries()), z_after);
    out.before.push_back(before);
    out.after.push_back(after);
    out.total_before += before;
    out.total_after += after;
    out.worst_deviation = std::max(out.worst_deviation, std::abs(after - before));
  }
  return out;
}

ToySpacetime toy_discrete_spacetime(int N, int k, double tol) {
  const TheorySpec polygon = zoo::polygon_theory(N);
  ToySpacetime toy;
  toy.N = N;
  toy.k = k;
  toy.rep.state = [N](const int& j) -> Matrix { return zoo::polygon_rotation(N, j).matrix(); };
  toy.rotation = toy.rep.state_map(k);

  GroupSample<int> sample;
  for (int j = 0; j < N; ++j) sample.elements.push_back(j);
  sample.compose = [](const int& a, const int& b) { return a + b; };
  sample.identity = 0;
  auto rep_report = check_representation(sample, toy.rep, tol);
  rep_report.composition.check = "toy-homomorphism";
  rep_report.composition.anchor = "T_k1 T_k2 = T_(k1+k2) maps to R(k1 theta) R(k2 theta) = R((k1+k2) theta)";
  rep_report.identity.check = "toy-identity";
  rep_report.identity.anchor = "T_0 acts as the identity";
  toy.nontrivial = !rep_report.trivial;
  toy.checks.push_back(rep_report.composition);
  toy.checks.push_back(rep_report.identity);

  CheckReport periodic("toy-periodicity", "T_(k+N) and T_k act identically; T_N acts as the identity", tol);
  const Matrix id = Matrix::Identity(3, 3);
  periodic.observe(max_abs(toy.rep.state_map(N) - id));
  for (int j = -N; j < 2 * N; ++j) periodic.observe(max_abs(toy.rep.state_map(j + N) - toy.rep.state_map(j)));
  toy.checks.push_back(periodic);

  const auto& states = polygon.states.as_polytope().vertices;
  const auto& effects = polygon.effects.as_polytope_hull().generators;
  CheckReport invariance("toy-invariance", "every outcome probability is unchanged by every translation", tol);
  CheckReport perm("toy-permutation", "the translation permutes the pure states cyclically", tol);
  CheckReport closure("toy-effect-closure", "translated effect generators are effect generators", tol);
  for (int j = 0; j < N; ++j) {
    const Matrix rs = toy.rep.state_map(j);
    const Matrix re = toy.rep.effect_map(j);
    for (const auto& e : effects)
      for (const auto& s : states) invariance.observe(std::abs((re * e.entries()).dot(rs * s.entries()) - e.entries().dot(s.entries())));
    for (int i = 0; i < N; ++i) perm.observe((rs * states[i].entries() - states[(i + j) % N].entries()).cwiseAbs().maxCoeff());
    for (const auto& e : effects) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : effects) best = std::min(best, (re * e.entries() - f.entries()).cwiseAbs().maxCoeff());
      closure.observe(best);
    }
  }
  toy.checks.push_back(invariance);
  toy.checks.push_back(perm);
  toy.checks.push_back(closure);

  const int shift = ((k % N) + N) % N;
  for (int i = 0; i < N; ++i) toy.permutation.push_back((i + shift) % N);
  return toy;
}

std::vector<CheckReport> orbit_ball_reconstruction(int n, const Vector& r, int rotations, std::uint64_t seed,
                                                   double tol) {
  if (n < 2) throw DomainError("orbit_ball_reconstruction: n must be >= 2");
  if (r.size() != n || std::abs(r.norm() - 1.0) > 1e-12) throw DomainError("orbit_ball_reconstruction: seed must be a unit n-vector");
  const ConvexSet ball = ConvexSet::ball(n);
  const TheorySpec theory = zoo::euclidean_ball(n);
  Sampler rng(seed);

  CheckReport purity("orbit-purity", "rotated pure states stay on the unit sphere", tol);
  CheckReport hull("orbit-hull", "mixtures of orbit points lie in the ball and are not pure", tol);
  CheckReport transitive("orbit-transitivity", "some rotation maps the seed state to any pure state", tol);
  CheckReport effects("effect-orbit", "rotated extremal effects are normalized extremal effects (1/2) O zeta", tol);
  CheckReport distinguish("antipodal-distinguishability", "eps_i(zeta_j) = delta_ij for antipodal pure states", tol);

  std::vector<Vector> orbit;
  for (int t = 0; t < rotations; ++t) {
    const Matrix o = rng.rotation(n);
    Matrix frame = Matrix::Identity(n + 1, n + 1);
    frame.bottomRightCorner(n, n) = o;
    const Vector image = o * r;
    orbit.push_back(image);
    purity.observe(std::abs(image.norm() - 1.0));

    const GptVector zeta0 = GptVector::state_from_spatial(r);
    const Vector eps0 = 0.5 * zeta0.entries();
    const GptVector rotated = GptVector::effect(frame.inverse().transpose() * eps0);
    effects.observe(max_abs(rotated.entries() - 0.5 * frame * zeta0.entries()));
    effects.require(is_normalized_effect(theory, rotated, tol));
    const double norm = rotated.spatial().norm();
    effects.observe(std::abs(rotated[0] + norm - 1.0));
    effects.observe(std::abs(rotated[0] - norm));

    const GptVector z0 = GptVector::state_from_spatial(image);
    const GptVector z1 = GptVector::state_from_spatial(-image);
    const std::array<GptVector, 2> zs{z0, z1};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        distinguish.observe(std::abs(probability(GptVector::effect(0.5 * zs[i].entries()), zs[j]) - (i == j ? 1.0 : 0.0)));

    const Vector target = rng.unit_vector(n);
    const Matrix q = spacetime::rotation_to_axis(target).spatial_block() *
                     spacetime::rotation_to_axis(r).spatial_block().transpose();
    transitive.observe((q * r - target).cwiseAbs().maxCoeff());
    transitive.observe(std::abs(q.determinant() - 1.0));
  }

  for (std::size_t t = 0; t + 1 < orbit.size(); ++t) {
    const double w = rng.uniform(0.05, 0.95);
    const Vector mix = w * orbit[t] + (1.0 - w) * orbit[t + 1];
    const GptVector s = GptVector::state_from_spatial(mix);
    hull.require(validate_state(ball, s).member);
    if ((orbit[t] - orbit[t + 1]).norm() > 1e-6) hull.require(!is_pure(ball, s, tol));
  }
  return {purity, hull, transitive, effects, distinguish};
}

}  // namespace gptlab::rep
