#include "gptlab/suites.hpp"

#include <cmath>

#include "gptlab/composites.hpp"
#include "gptlab/errors.hpp"
#include "gptlab/minkowski.hpp"
#include "gptlab/model_zoo.hpp"
#include "gptlab/poincare_rep.hpp"
#include "gptlab/sampling.hpp"

namespace gptlab::suites {

namespace {

using spacetime::LorentzMatrix;
using spacetime::MassiveMomentum;
using spacetime::PoincareTransform;
using spacetime::SpacetimeVector;

double pick(const std::optional<double>& over, double fallback) { return over ? *over : fallback; }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double lorentz_defect(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd eta = spacetime::metric(static_cast<int>(m.rows()) - 1);
  return max_abs(m.transpose() * eta * m - eta);
}

double shell_defect(const SpacetimeVector& p, double m) {
  const Eigen::VectorXd& v = p.entries();
  return std::abs(-v[0] * v[0] + v.tail(v.size() - 1).squaredNorm() + m * m);
}

// Deviation of a Lorentz matrix from block-diag(1, SO(n)).
double rotation_defect(const LorentzMatrix& w) {
  const int n = w.n();
  const Eigen::MatrixXd& m = w.matrix();
  double dev = std::abs(m(0, 0) - 1.0);
  dev = std::max(dev, max_abs(m.row(0).tail(n)));
  dev = std::max(dev, max_abs(m.col(0).tail(n)));
  const Eigen::MatrixXd o = w.spatial_block();
  dev = std::max(dev, max_abs(o.transpose() * o - Eigen::MatrixXd::Identity(n, n)));
  dev = std::max(dev, std::abs(o.determinant() - 1.0));
  return dev;
}

// Rotation angle of a matrix in SO(n) that acts in a single plane.
double plane_angle(const Eigen::MatrixXd& o) {
  const double n = static_cast<double>(o.rows());
  return std::acos(std::clamp((o.trace() - (n - 2.0)) / 2.0, -1.0, 1.0));
}

PoincareTransform pure_translation(const SpacetimeVector& a) { return {a, LorentzMatrix::identity(a.n())}; }

}  // namespace

SuiteResult minkowski_checks(const SuiteConfig& cfg) {
  const int n = cfg.n;
  if (n < 1) throw DomainError("minkowski-checks: n must be >= 1");
  Sampler rng(cfg.seed);
  const double m = cfg.mass;
  SuiteResult out;
  out.suite = "minkowski-checks";

  CheckReport interval("interval-invariance", "the spacetime interval is invariant under Poincare transformations",
                       pick(cfg.tol, 1e-9));
  CheckReport shell("mass-shell", "Lorentz transformations keep a massive momentum on its mass shell",
                    pick(cfg.tol, 1e-9));
  CheckReport closure("proper-orthochronous-closure",
                      "generated transforms and their products are proper orthochronous Lorentz matrices",
                      pick(cfg.tol, 1e-9));
  CheckReport inverse("compose-inverse", "P composed with its inverse is the identity", pick(cfg.tol, 1e-10));
  CheckReport assoc("compose-associativity", "composition of Poincare transforms is associative", pick(cfg.tol, 1e-9));
  CheckReport translations("translation-composition", "two translations compose to the summed translation",
                           pick(cfg.tol, 1e-12));
  CheckReport pair("pair-action", "P(x, L)(b, p) = (x + L b, L p); translations leave momenta unchanged",
                   pick(cfg.tol, 1e-12));
  CheckReport standard("standard-boost", "the standard boost maps the rest momentum to p", pick(cfg.tol, 1e-10));
  CheckReport covariance("standard-boost-covariance",
                         "standard_boost(L p) p_rest = L standard_boost(p) p_rest", pick(cfg.tol, 1e-9));
  CheckReport boost_inv("boost-inverse", "the inverse of a first-axis boost negates its off-diagonal entries",
                        pick(cfg.tol, 1e-10));

  const MassiveMomentum rest = MassiveMomentum::rest(n, m);
  for (int s = 0; s < cfg.samples; ++s) {
    const PoincareTransform p1 = spacetime::random_poincare(rng, n);
    const PoincareTransform p2 = spacetime::random_poincare(rng, n);
    const PoincareTransform p3 = spacetime::random_poincare(rng, n);
    const SpacetimeVector x = spacetime::random_event(rng, n);
    const SpacetimeVector y = spacetime::random_event(rng, n);
    interval.observe(std::abs(spacetime::interval(apply_poincare(p1, x), apply_poincare(p1, y)) - spacetime::interval(x, y)));

    const MassiveMomentum p = spacetime::random_momentum(rng, n, m);
    shell.observe(shell_defect(p1.lambda * p.p(), m));

    const LorentzMatrix prod = p2.lambda * p1.lambda;
    for (const auto* l : {&p1.lambda, &prod}) {
      closure.observe(lorentz_defect(l->matrix()));
      closure.observe(std::abs(l->determinant() - 1.0));
      closure.require(l->matrix()(0, 0) >= 1.0);
    }

    inverse.observe(spacetime::distance(compose(p1, spacetime::inverse(p1)), PoincareTransform::identity(n)));
    assoc.observe(spacetime::distance(compose(p3, compose(p2, p1)), compose(compose(p3, p2), p1)));
    const SpacetimeVector a1 = spacetime::random_event(rng, n);
    const SpacetimeVector a2 = spacetime::random_event(rng, n);
    translations.observe(
        spacetime::distance(compose(pure_translation(a2), pure_translation(a1)), pure_translation(a1 + a2)));

    const spacetime::PhaseSpacePoint pt{y, p.p()};
    const auto moved = apply_poincare(p1, pt);
    pair.observe(max_abs((moved.position.entries() - (p1.lambda * y + p1.a).entries())));
    pair.observe(max_abs((moved.momentum.entries() - (p1.lambda * p.p()).entries())));
    const auto shifted = apply_poincare(pure_translation(a1), pt);
    pair.observe(max_abs(shifted.momentum.entries() - p.p().entries()));

    const LorentzMatrix lp = spacetime::standard_boost(p);
    standard.observe(max_abs((lp * rest.p()).entries() - p.p().entries()));
    standard.require(lp.proper_orthochronous());
    const MassiveMomentum q = spacetime::transform(p1.lambda, p);
    covariance.observe(max_abs((spacetime::standard_boost(q) * rest.p()).entries() - (p1.lambda * (lp * rest.p())).entries()));

    const double norm = p.spatial_norm();
    Eigen::MatrixXd negated = spacetime::boost_x(norm, m, n).matrix();
    negated(0, 1) = -negated(0, 1);
    negated(1, 0) = -negated(1, 0);
    boost_inv.observe(max_abs(spacetime::boost_x(norm, m, n).inverse().matrix() - negated));
  }
  out.checks = {interval, shell, closure, inverse, assoc, translations, pair, standard, covariance, boost_inv};
  return out;
}

double perpendicular_boost_angle(int n) {
  if (n < 2) throw DomainError("perpendicular boosts need n >= 2");
  // p has gamma = sqrt2 along e1; the boost along e2 has gamma = sqrt2 as well.
  const MassiveMomentum p = MassiveMomentum::on_shell(Eigen::VectorXd::Unit(n, 0), 1.0);
  const LorentzMatrix second = spacetime::standard_boost(MassiveMomentum::on_shell(Eigen::VectorXd::Unit(n, 1), 1.0));
  return plane_angle(spacetime::wigner_rotation(second, p).spatial_block());
}

SuiteResult little_group_checks(const SuiteConfig& cfg) {
  const int n = cfg.n;
  if (n < 1) throw DomainError("little-group-checks: n must be >= 1");
  Sampler rng(cfg.seed + 1);
  const double m = cfg.mass;
  SuiteResult out;
  out.suite = "little-group-checks";

  CheckReport fixes("little-group-stabilizer", "the little group element fixes the pair (0, p_rest)", pick(cfg.tol, 1e-9));
  CheckReport zero("little-group-translation", "the translation part of the little group element vanishes",
                   pick(cfg.tol, 1e-9));
  CheckReport rotation("pure-rotation-reduction", "for a pure rotation O the little group element is P(0, O)",
                       pick(cfg.tol, 1e-9));
  CheckReport so_n("wigner-rotation-so-n", "Wigner rotations fix the time axis and lie in SO(n)", pick(cfg.tol, 1e-9));
  CheckReport law("little-group-composition", "little group elements compose like the data they are built from",
                  pick(cfg.tol, 1e-8));
  CheckReport internal("induced-rep-composition", "induced internal maps form a representation of the little group",
                       pick(cfg.tol, 1e-8));
  CheckReport identity("little-group-identity", "the identity Lorentz matrix gives the identity transform",
                       pick(cfg.tol, 1e-9));
  CheckReport collinear("collinear-boost", "a boost collinear with p induces no Wigner rotation", pick(cfg.tol, 1e-9));

  const MassiveMomentum rest = MassiveMomentum::rest(n, m);
  const spacetime::PhaseSpacePoint origin{SpacetimeVector::zero(n), rest.p()};
  const int draws = 2 * cfg.samples;
  for (int s = 0; s < draws; ++s) {
    const SpacetimeVector a = spacetime::random_event(rng, n);
    const SpacetimeVector x = spacetime::random_event(rng, n);
    const LorentzMatrix l = spacetime::random_lorentz(rng, n);
    const MassiveMomentum p = spacetime::random_momentum(rng, n, m);
    const PoincareTransform g = spacetime::little_group_element(a, x, l, p);
    const auto image = apply_poincare(g, origin);
    fixes.observe(std::max(max_abs(image.position.entries()), max_abs(image.momentum.entries() - rest.p().entries())));
    zero.observe(max_abs(g.a.entries()));
    so_n.observe(rotation_defect(spacetime::wigner_rotation(l, p)));
    so_n.observe(max_abs(g.lambda.matrix() - spacetime::wigner_rotation(l, p).matrix()));
    identity.observe(spacetime::distance(spacetime::little_group_element(a, x, LorentzMatrix::identity(n), p),
                                         PoincareTransform::identity(n)));
  }

  for (int s = 0; s < cfg.samples; ++s) {
    const SpacetimeVector a = spacetime::random_event(rng, n);
    const SpacetimeVector x = spacetime::random_event(rng, n);
    const MassiveMomentum p = spacetime::random_momentum(rng, n, m);
    if (n >= 2) {
      const LorentzMatrix o = LorentzMatrix::rotation(rng.rotation(n));
      rotation.observe(spacetime::distance(spacetime::little_group_element(a, x, o, p),
                                           PoincareTransform{SpacetimeVector::zero(n), o}));
    } else {
      // SO(1) is trivial: the only rotation is the identity.
      rotation.observe(spacetime::distance(spacetime::little_group_element(a, x, LorentzMatrix::identity(n), p),
                                           PoincareTransform::identity(n)));
    }

    const SpacetimeVector a2 = spacetime::random_event(rng, n);
    const LorentzMatrix l1 = spacetime::random_lorentz(rng, n);
    const LorentzMatrix l2 = spacetime::random_lorentz(rng, n);
    const PoincareTransform first = spacetime::little_group_element(a, x, l1, p);
    const PoincareTransform second = spacetime::little_group_element(a2, x + a, l2, spacetime::transform(l1, p));
    const PoincareTransform joint = spacetime::little_group_element(a + a2, x, l2 * l1, p);
    law.observe(spacetime::distance(compose(second, first), joint));

    // Internal action on a ball of dimension n: block-diag(1, spatial block).
    const Eigen::MatrixXd r1 = first.lambda.matrix();
    const Eigen::MatrixXd r2 = second.lambda.matrix();
    internal.observe(max_abs(r2 * r1 - joint.lambda.matrix()));
    internal.observe(max_abs(r1.inverse().transpose() - r1));

    const double t = rng.uniform(0.1, 2.0);
    const LorentzMatrix along = spacetime::standard_boost(
        MassiveMomentum::on_shell(t * p.p().spatial() / std::max(p.spatial_norm(), 1e-300), m));
    if (p.spatial_norm() > 1e-6)
      collinear.observe(max_abs(spacetime::wigner_rotation(along, p).matrix() - Eigen::MatrixXd::Identity(n + 1, n + 1)));
  }
  out.checks = {fixes, zero, rotation, so_n, law, internal, identity, collinear};

  if (n >= 2) {
    const double g = std::sqrt(2.0);
    CheckReport angle("thomas-wigner-angle",
                      "perpendicular boosts with gamma1 = gamma2 = sqrt2 induce a rotation with cos = (g1 + g2) / (1 + g1 g2)",
                      pick(cfg.tol, 1e-9));
    angle.observe(std::abs(perpendicular_boost_angle(n) - std::acos((g + g) / (1.0 + g * g))));
    angle.require(perpendicular_boost_angle(n) > 0.1);
    out.checks.push_back(angle);
  }
  return out;
}

SuiteResult invariance_checks(const SuiteConfig& cfg) {
  const int n = cfg.n;
  if (n < 1) throw DomainError("invariance-checks: n must be >= 1");
  Sampler rng(cfg.seed + 2);
  const double m = cfg.mass;
  SuiteResult out;
  out.suite = "invariance-checks";
  const TheoryRef ball = share(zoo::euclidean_ball(n));
  const auto fundamental = rep::fundamental_rep(n);

  CheckReport invariance("probability-invariance",
                         "E'[Z'] = E[Z] for ball internals under rotations with the fundamental representation",
                         pick(cfg.tol, 1e-10));
  CheckReport induced("induced-rep-invariance", "E'[Z'] = E[Z] under Lorentz transforms acting by Wigner rotations",
                      pick(cfg.tol, 1e-10));
  CheckReport delta("momentum-kronecker", "pairings vanish exactly when momentum labels differ", 0.0);
  CheckReport reduction("pure-rotation-internal", "for a pure rotation the induced internal map is the rotation itself",
                        pick(cfg.tol, 1e-10));

  const MassiveMomentum rest = MassiveMomentum::rest(n, m);
  const int triples = 2 * cfg.samples;
  for (int s = 0; s < triples; ++s) {
    const MassiveMomentum p = spacetime::random_momentum(rng, n, m);
    const GptVector zeta = GptVector::state_from_spatial(rng.ball_point(n));
    const GptVector eps = GptVector::effect(rng.uniform(0.0, 1.0) * zoo::ball_effect(rng.unit_vector(n)).entries());
    const auto z = rep::ClassicalMomentumState::make(p, zeta, ball);
    const auto e = rep::ClassicalMomentumEffect::make(p, eps, ball);
    const Eigen::MatrixXd o = n >= 2 ? rng.rotation(n) : Eigen::MatrixXd::Identity(1, 1);
    const PoincareTransform g{spacetime::random_event(rng, n), LorentzMatrix::rotation(o)};
    invariance.merge_from(rep::invariance_report({{e, z}}, g, fundamental, invariance.tolerance));

    const MassiveMomentum other = spacetime::random_momentum(rng, n, m, 2.0);
    const auto e_other = rep::ClassicalMomentumEffect::make(other, eps, ball);
    delta.observe(std::abs(rep::classical_pairing(e_other, z)));

    const auto zr = rep::ClassicalMomentumState::make(rest, zeta, ball);
    const auto er = rep::ClassicalMomentumEffect::make(rest, eps, ball);
    const PoincareTransform boost{spacetime::random_event(rng, n), spacetime::random_lorentz(rng, n)};
    induced.merge_from(rep::invariance_report({{er, zr}}, boost, rep::induced_rep(rest), induced.tolerance));

    reduction.observe(max_abs(rep::induced_rep(p).state_map(g) - fundamental.state_map(g)));
  }

  // Negative control: a shear with R^ef = R^st must break invariance.
  CheckReport control("mismatched-rep-detected", "a non-orthogonal map used for states and effects alike is rejected",
                      0.0);
  {
    Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(n + 1, n + 1);
    shear(1, n) += 0.5;
    if (n == 1) shear(1, 1) = 1.5;
    const GptVector zeta = GptVector::state_from_spatial(Eigen::VectorXd::Unit(n, n - 1) * 0.5);
    const GptVector eps = zoo::ball_effect(Eigen::VectorXd::Unit(n, 0));
    const auto z = rep::ClassicalMomentumState::make(rest, zeta, ball);
    const auto e = rep::ClassicalMomentumEffect::make(rest, eps, ball);
    const auto bad = rep::constant_rep(shear, shear);
    control.require(!rep::check_invariance({{e, z}}, PoincareTransform::identity(n), bad, 1e-10));
    rep::RepMap<PoincareTransform> good;
    good.state = bad.state;
    control.require(rep::check_invariance({{e, z}}, PoincareTransform::identity(n), good, 1e-10));
  }

  CheckReport detector("detector-sphere", "P'(i) = P(i) for every detector after rotating the frame", pick(cfg.tol, 1e-10));
  CheckReport total("detector-normalization", "detector probabilities sum to 1", pick(cfg.tol, 1e-12));
  {
    std::vector<Eigen::Vector3d> axes;
    for (int i = 0; i < 3; ++i) {
      axes.push_back(Eigen::Vector3d::Unit(i));
      axes.push_back(-Eigen::Vector3d::Unit(i));
    }
    for (int s = 0; s < cfg.samples; ++s) {
      const GptVector z = GptVector::state_from_spatial(rng.ball_point(3));
      const Eigen::Matrix3d o = rng.rotation(3);
      const Eigen::Vector3d axis = rng.unit_vector(3);
      for (const auto& set : {axes, std::vector<Eigen::Vector3d>{axis, -axis}}) {
        const auto exp = rep::detector_sphere_experiment(z, set, o);
        detector.observe(exp.worst_deviation);
        total.observe(std::abs(exp.total_before - 1.0));
        total.observe(std::abs(exp.total_after - 1.0));
      }
    }
  }

  out.checks = {invariance, induced, delta, reduction, control, detector, total};
  if (n >= 2) {
    Eigen::VectorXd r = Eigen::VectorXd::Unit(n, n - 1);
    for (const auto& c : rep::orbit_ball_reconstruction(n, r, cfg.samples, cfg.seed + 3, pick(cfg.tol, 1e-10)))
      out.checks.push_back(c);
  }
  return out;
}

SuiteResult toy_spacetime_checks(int N, int k, std::optional<double> tol) {
  const auto toy = rep::toy_discrete_spacetime(N, k, pick(tol, 1e-12));
  SuiteResult out;
  out.suite = "toy-spacetime";
  out.checks = toy.checks;
  CheckReport nontrivial("toy-nontrivial", "the translations act by a nontrivial representation", 0.0);
  nontrivial.require(toy.nontrivial);
  out.checks.push_back(nontrivial);
  CheckReport example("toy-example", "T_k sends pure state i to state i + k mod N", pick(tol, 1e-12));
  const auto polygon = zoo::polygon_theory(N);
  const auto& states = polygon.states.as_polytope().vertices;
  for (int i = 0; i < N; ++i)
    example.observe(max_abs(toy.rotation * states[i].entries() - states[toy.permutation[i]].entries()));
  out.checks.push_back(example);
  return out;
}

}  // namespace gptlab::suites
