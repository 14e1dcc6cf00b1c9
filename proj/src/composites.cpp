#include "gptlab/composites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include <Eigen/Eigenvalues>

#include "gptlab/errors.hpp"
#include "gptlab/model_zoo.hpp"
#include "gptlab/sampling.hpp"

namespace gptlab {

namespace {

template <class S>
using Vec = std::vector<S>;

template <class S>
Vec<S> kron(const Vec<S>& x, const Vec<S>& y) {
  Vec<S> out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) out.push_back(a * b);
  return out;
}

Vec<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector from_std(const Vec<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Vec<double> to_double(const Vec<Rational>& v) {
  Vec<double> out;
  for (const auto& x : v) out.push_back(x.convert_to<double>());
  return out;
}

Vec<Rational> to_exact(const Vec<double>& v) { return {v.begin(), v.end()}; }

std::vector<Vec<Rational>> to_exact(const std::vector<Vec<double>>& vs) {
  std::vector<Vec<Rational>> out;
  for (const auto& v : vs) out.push_back(to_exact(v));
  return out;
}

void check_measurement(const BinaryMeasurement& m, int d, double tol) {
  if (m.plus.dimension() != d || m.minus.dimension() != d)
    throw DimensionError("measurement dimension does not match its local theory");
  const Vector sum = m.plus.entries() + m.minus.entries();
  if ((sum - Vector::Unit(d + 1, 0)).cwiseAbs().maxCoeff() > tol)
    throw DomainError("malformed measurement: effects do not sum to the unit effect");
}

// Extreme points of a local state space used for product hulls.
struct LocalPoints {
  std::vector<Vector> points;
  double radius = 0.0;
};

LocalPoints local_points(const TheorySpec& t, int resolution) {
  LocalPoints lp;
  if (t.states.is_polytope()) {
    for (const auto& v : t.states.as_polytope().vertices) lp.points.push_back(v.entries());
    return lp;
  }
  const int d = t.d;
  if (d == 0) {
    lp.points.push_back(Vector::Ones(1));
    return lp;
  }
  const auto dirs = sphere_points(d, d == 1 ? 2 : resolution);
  for (const auto& v : dirs) lp.points.push_back(GptVector::state_from_spatial(v).entries());
  lp.radius = sphere_covering_radius(d, dirs);
  return lp;
}

// Effects whose products cut out the max tensor product.
std::vector<Vector> constraint_effects(const TheorySpec& t, int resolution, double tol) {
  if (t.effects.is_polytope_hull()) {
    std::vector<Vector> gens;
    for (const auto& e : t.effects.extremal()) gens.push_back(e.entries());
    return irredundant_rays(gens, tol);
  }
  std::vector<Vector> out;
  if (t.d == 0) {
    out.push_back(Vector::Ones(1));
    return out;
  }
  for (const auto& v : sphere_points(t.d, t.d == 1 ? 2 : resolution)) out.push_back(zoo::ball_effect(v).entries());
  return out;
}

template <class S>
lp::Problem<S> product_hull_problem(const std::vector<Vec<S>>& pa, const std::vector<Vec<S>>& pb, const Vec<S>& phi) {
  lp::Problem<S> p;
  const std::size_t cols = pa.size() * pb.size();
  p.A.assign(phi.size(), Vec<S>(cols, S(0)));
  p.c.assign(cols, S(0));
  p.b = phi;
  const std::size_t lb = pb.front().size();
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const std::size_t col = i * pb.size() + j;
      for (std::size_t r = 0; r < pa[i].size(); ++r)
        for (std::size_t s = 0; s < lb; ++s) p.A[r * lb + s][col] = pa[i][r] * pb[j][s];
    }
  return p;
}

template <class S>
struct ChshLpResult {
  lp::Status status = lp::Status::infeasible;
  S value{0};
  Vec<S> phi;
};

// Rows (g (x) h) . phi >= 0 for each constraint vector plus (u (x) u) . phi = 1,
// phi split into positive and negative parts.
template <class S>
lp::Problem<S> max_tensor_problem(const std::vector<Vec<S>>& constraints, std::size_t dim) {
  const std::size_t k = constraints.size();
  lp::Problem<S> p;
  p.A.assign(k + 1, Vec<S>(2 * dim + k, S(0)));
  p.b.assign(k + 1, S(0));
  p.c.assign(2 * dim + k, S(0));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      p.A[r][c] = constraints[r][c];
      p.A[r][dim + c] = -constraints[r][c];
    }
    p.A[r][2 * dim + r] = S(-1);
  }
  p.A[k][0] = S(1);
  p.A[k][dim] = S(-1);
  p.b[k] = S(1);
  return p;
}

template <class S>
ChshLpResult<S> run_chsh_lp(lp::Problem<S> problem, const Vec<S>& functional) {
  const std::size_t dim = functional.size();
  for (std::size_t c = 0; c < dim; ++c) {
    problem.c[c] = -functional[c];
    problem.c[dim + c] = functional[c];
  }
  const auto sol = lp::solve(problem);
  ChshLpResult<S> out;
  out.status = sol.status;
  if (sol.status != lp::Status::optimal) return out;
  out.value = -sol.objective;
  out.phi.resize(dim);
  for (std::size_t c = 0; c < dim; ++c) out.phi[c] = sol.x[c] - sol.x[dim + c];
  return out;
}

template <class S>
Vec<S> chsh_functional(const Vec<S>& a0, const Vec<S>& a1, const Vec<S>& b0, const Vec<S>& b1) {
  const auto t00 = kron(a0, b0);
  const auto t01 = kron(a0, b1);
  const auto t10 = kron(a1, b0);
  const auto t11 = kron(a1, b1);
  Vec<S> f(t00.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = t00[i] + t01[i] + t10[i] - t11[i];
  return f;
}

template <class S>
struct ChshSearch {
  ChshLpResult<S> best;
  std::array<int, 4> choice{};
  std::size_t lp_count = 0;
};

// Exhaustive search over (x0, x1, y0, y1); ties keep the first optimum found.
template <class S>
ChshSearch<S> search_chsh(const std::vector<Vec<S>>& rays_a, const std::vector<Vec<S>>& rays_b,
                          const std::vector<Vec<S>>& obs_a, const std::vector<Vec<S>>& obs_b) {
  std::vector<Vec<S>> constraints;
  for (const auto& g : rays_a)
    for (const auto& h : rays_b) constraints.push_back(kron(g, h));
  const std::size_t dim = rays_a.front().size() * rays_b.front().size();
  const auto base = max_tensor_problem(constraints, dim);

  ChshSearch<S> search;
  bool have = false;
  const int na = static_cast<int>(obs_a.size());
  const int nb = static_cast<int>(obs_b.size());
  for (int x0 = 0; x0 < na; ++x0)
    for (int x1 = 0; x1 < na; ++x1)
      for (int y0 = 0; y0 < nb; ++y0)
        for (int y1 = 0; y1 < nb; ++y1) {
          auto res = run_chsh_lp(base, chsh_functional(obs_a[x0], obs_a[x1], obs_b[y0], obs_b[y1]));
          ++search.lp_count;
          if (res.status == lp::Status::infeasible)
            throw InternalError("maximize_chsh: max tensor product is empty");
          if (res.status == lp::Status::unbounded)
            throw InternalError("maximize_chsh: unbounded CHSH functional; effects are not tomographic");
          if (!have || res.value > search.best.value) {
            search.best = std::move(res);
            search.choice = {x0, x1, y0, y1};
            have = true;
          }
        }
  if (!have) throw DomainError("maximize_chsh: empty measurement family");
  return search;
}

std::string rational_string(const Rational& q) { return q.str(); }

Matrix kron_matrix(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_same_locals(const JointState& phi) {
  if (!phi.local_a_ref() || !phi.local_b_ref()) throw DomainError("joint state without local theories");
}

}  // namespace

Vector tensor(const Vector& x, const Vector& y) {
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
  return out;
}

Vector tensor(const GptVector& x, const GptVector& y) { return tensor(x.entries(), y.entries()); }

JointState::JointState(Vector v, TheoryRef a, TheoryRef b, double tol) {
  *this = unchecked(std::move(v), std::move(a), std::move(b));
  if (std::abs(v_[0] - 1.0) > tol) throw DomainError("joint state: (u_A x u_B) . phi differs from 1");
}

JointState JointState::unchecked(Vector v, TheoryRef a, TheoryRef b) {
  if (!a || !b) throw DomainError("joint state: missing local theory");
  if (v.size() != (a->d + 1) * (b->d + 1))
    throw DimensionError("joint state: expected length " + std::to_string((a->d + 1) * (b->d + 1)) + ", got " +
                         std::to_string(v.size()));
  if (!v.allFinite()) throw DomainError("joint state: non-finite entry");
  JointState s;
  s.v_ = std::move(v);
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  return s;
}

JointState JointState::product(const GptVector& x, const GptVector& y, TheoryRef a, TheoryRef b) {
  if (x.role() != Role::state || y.role() != Role::state) throw DomainError("product: factors must be states");
  if (x.dimension() != a->d || y.dimension() != b->d) throw DimensionError("product: factor dimension mismatch");
  return JointState(tensor(x, y), std::move(a), std::move(b));
}

Matrix JointState::as_matrix() const {
  const Eigen::Index ra = a_->d + 1;
  const Eigen::Index rb = b_->d + 1;
  Matrix m(ra, rb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < rb; ++j) m(i, j) = v_[i * rb + j];
  return m;
}

Vector JointState::marginal_a() const { return as_matrix().col(0); }

Vector JointState::marginal_b() const { return as_matrix().row(0).transpose(); }

double JointState::pairing(const GptVector& ea, const GptVector& eb) const {
  if (ea.dimension() != a_->d || eb.dimension() != b_->d) throw DimensionError("pairing: effect dimension mismatch");
  return tensor(ea, eb).dot(v_);
}

BinaryMeasurement BinaryMeasurement::from_effect(const GptVector& e) {
  return {e, GptVector::effect(Vector::Unit(e.size(), 0) - e.entries())};
}

double correlator(const JointState& state, const BinaryMeasurement& a, const BinaryMeasurement& b) {
  return state.vector().dot(tensor(a.observable(), b.observable()));
}

double chsh_value(const ChshScenario& s, double tol) {
  check_same_locals(s.state);
  const int da = s.state.local_a().d;
  const int db = s.state.local_b().d;
  for (const auto* m : {&s.a0, &s.a1}) check_measurement(*m, da, tol);
  for (const auto* m : {&s.b0, &s.b1}) check_measurement(*m, db, tol);
  return correlator(s.state, s.a0, s.b0) + correlator(s.state, s.a0, s.b1) + correlator(s.state, s.a1, s.b0) -
         correlator(s.state, s.a1, s.b1);
}

std::vector<BinaryMeasurement> default_measurements(const TheorySpec& theory, int ball_resolution) {
  std::vector<BinaryMeasurement> out;
  if (theory.effects.is_polytope_hull()) {
    for (const auto& e : theory.effects.extremal()) out.push_back(BinaryMeasurement::from_effect(e));
    return out;
  }
  if (theory.d == 0) return out;
  for (const auto& v : sphere_points(theory.d, theory.d == 1 ? 2 : ball_resolution))
    out.push_back({zoo::ball_effect(v), zoo::ball_effect(-v)});
  return out;
}

std::vector<Vector> irredundant_rays(const std::vector<Vector>& generators, double tol) {
  std::vector<Vector> rays;
  for (const auto& g : generators) {
    const double n = g.norm();
    if (n <= tol) continue;
    bool dup = false;
    for (const auto& r : rays)
      if ((r / r.norm() - g / n).cwiseAbs().maxCoeff() <= tol) dup = true;
    if (!dup) rays.push_back(g);
  }
  // Removing a redundant generator leaves the cone unchanged, so one pass suffices.
  for (std::size_t i = rays.size(); i-- > 0;) {
    if (rays.size() < 2) break;
    lp::Problem<double> p;
    const auto rows = static_cast<std::size_t>(rays[i].size());
    p.A.assign(rows, Vec<double>(rays.size() - 1));
    p.c.assign(rays.size() - 1, 0.0);
    p.b = to_std(rays[i]);
    std::size_t col = 0;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (j == i) continue;
      for (std::size_t r = 0; r < rows; ++r) p.A[r][col] = rays[j][static_cast<Eigen::Index>(r)];
      ++col;
    }
    lp::Options lo;
    lo.feasibility_tol = tol;
    if (lp::solve(p, lo).status != lp::Status::infeasible) rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return rays;
}

std::string to_string(Separability s) {
  switch (s) {
    case Separability::separable:
      return "separable";
    case Separability::entangled:
      return "entangled";
    case Separability::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

SeparabilityVerdict is_separable(const JointState& phi, const SeparabilityOptions& opts) {
  check_same_locals(phi);
  const auto la = local_points(phi.local_a(), opts.ball_resolution);
  const auto lb = local_points(phi.local_b(), opts.ball_resolution);
  std::vector<Vec<double>> pa;
  std::vector<Vec<double>> pb;
  for (const auto& v : la.points) pa.push_back(to_std(v));
  for (const auto& v : lb.points) pb.push_back(to_std(v));
  const auto problem = product_hull_problem(pa, pb, to_std(phi.vector()));

  SeparabilityVerdict verdict;
  verdict.discretization_radius = std::max(la.radius, lb.radius);
  verdict.resolution = verdict.discretization_radius > 0.0 ? opts.ball_resolution : 0;
  const bool sampled = verdict.discretization_radius > 0.0;

  bool feasible = false;
  Vec<double> weights;
  if (opts.arithmetic == lp::Arithmetic::exact) {
    const auto q = lp::to_rational(problem);
    const auto sol = lp::solve(q);
    verdict.infeasibility = sol.infeasibility.convert_to<double>();
    feasible = sol.status != lp::Status::infeasible;
    if (feasible) {
      weights = to_double(sol.x);
    } else {
      verdict.farkas = to_double(sol.farkas);
      verdict.certificate_verified = lp::verify_farkas(q, sol.farkas);
    }
  } else {
    lp::Options lo;
    lo.feasibility_tol = opts.tol;
    const auto sol = lp::solve(problem, lo);
    verdict.infeasibility = sol.infeasibility;
    feasible = sol.status != lp::Status::infeasible;
    if (feasible) {
      weights = sol.x;
    } else {
      verdict.farkas = sol.farkas;
      verdict.certificate_verified = lp::verify_farkas(problem, sol.farkas, opts.tol);
    }
  }

  if (feasible) {
    verdict.kind = Separability::separable;
    for (std::size_t k = 0; k < weights.size(); ++k)
      if (weights[k] > 0.0)
        verdict.weights.push_back({static_cast<int>(k / pb.size()), static_cast<int>(k % pb.size()), weights[k]});
  } else {
    verdict.kind = sampled ? Separability::inconclusive : Separability::entangled;
  }
  return verdict;
}

MaxTensorReport max_tensor_report(const JointState& phi, const MaxTensorOptions& opts) {
  check_same_locals(phi);
  const auto& ta = phi.local_a();
  const auto& tb = phi.local_b();
  MaxTensorReport rep;
  rep.normalization_error = std::abs(phi.normalization() - 1.0);
  const Matrix m = phi.as_matrix();
  double worst = std::numeric_limits<double>::infinity();

  const bool ball_a = ta.effects.is_ball_dual() && ta.d > 0;
  const bool ball_b = tb.effects.is_ball_dual() && tb.d > 0;
  // Minimum of (g (x) (1/2)(1, v)) . phi over unit v is (1/2)(w0 - |w~|) with w = M^T g.
  auto analytic = [&worst](const Matrix& mm, const std::vector<Vector>& gens) {
    for (const auto& g : gens) {
      const Vector w = mm * g;
      worst = std::min(worst, 0.5 * (w[0] - w.tail(w.size() - 1).norm()));
    }
  };
  if (ball_b) {
    analytic(m.transpose(), constraint_effects(ta, opts.ball_resolution, opts.tol));
  } else if (ball_a) {
    analytic(m, constraint_effects(tb, opts.ball_resolution, opts.tol));
  } else {
    const auto ea = constraint_effects(ta, opts.ball_resolution, opts.tol);
    const auto eb = constraint_effects(tb, opts.ball_resolution, opts.tol);
    for (const auto& g : ea)
      for (const auto& h : eb) worst = std::min(worst, g.dot(m * h));
  }
  rep.min_pairing = worst;
  rep.member = rep.normalization_error <= opts.tol && worst >= -opts.tol;
  return rep;
}

bool in_max_tensor(const JointState& phi, double tol) {
  MaxTensorOptions opts;
  opts.tol = tol;
  return max_tensor_report(phi, opts).member;
}

CorrelationTable correlation_table(const JointState& phi, const std::vector<BinaryMeasurement>& fa,
                                   const std::vector<BinaryMeasurement>& fb) {
  CorrelationTable t(static_cast<int>(fa.size()), static_cast<int>(fb.size()));
  for (int x = 0; x < t.inputs_a; ++x)
    for (int y = 0; y < t.inputs_b; ++y) {
      const GptVector* ea[2] = {&fa[x].plus, &fa[x].minus};
      const GptVector* eb[2] = {&fb[y].plus, &fb[y].minus};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t.at(x, y, a, b) = phi.pairing(*ea[a], *eb[b]);
    }
  return t;
}

bool no_signalling_table(const CorrelationTable& t, double tol) {
  for (int x = 0; x < t.inputs_a; ++x)
    for (int y = 0; y < t.inputs_b; ++y) {
      double total = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          if (t.at(x, y, a, b) < -tol) return false;
          total += t.at(x, y, a, b);
        }
      if (std::abs(total - 1.0) > tol) return false;
    }
  for (int x = 0; x < t.inputs_a; ++x)
    for (int a = 0; a < 2; ++a) {
      const double ref = t.at(x, 0, a, 0) + t.at(x, 0, a, 1);
      for (int y = 1; y < t.inputs_b; ++y)
        if (std::abs(t.at(x, y, a, 0) + t.at(x, y, a, 1) - ref) > tol) return false;
    }
  for (int y = 0; y < t.inputs_b; ++y)
    for (int b = 0; b < 2; ++b) {
      const double ref = t.at(0, y, 0, b) + t.at(0, y, 1, b);
      for (int x = 1; x < t.inputs_a; ++x)
        if (std::abs(t.at(x, y, 0, b) + t.at(x, y, 1, b) - ref) > tol) return false;
    }
  return true;
}

bool no_signalling_check(const JointState& phi, const NoSignallingOptions& opts) {
  MaxTensorOptions mo;
  mo.tol = opts.tol;
  if (!max_tensor_report(phi, mo).member) return false;
  const auto fa = default_measurements(phi.local_a(), opts.ball_resolution);
  const auto fb = default_measurements(phi.local_b(), opts.ball_resolution);
  return no_signalling_table(correlation_table(phi, fa, fb), opts.tol);
}

namespace {

// Rational-frame image of an effect that is u, zero or one of the extremal
// effects of `t`; nullopt for anything else.
std::optional<exact::RationalVector> rational_effect(const TheorySpec& t, const exact::RationalTheory& r,
                                                     const GptVector& e) {
  const auto close = [&](const Vector& v) { return (v - e.entries()).cwiseAbs().maxCoeff() <= 1e-12; };
  if (close(GptVector::unit_effect(t.d).entries())) return r.unit;
  if (close(GptVector::zero_effect(t.d).entries())) return exact::RationalVector(r.unit.size(), Rational(0));
  const auto ext = t.effects.extremal();
  for (std::size_t i = 0; i < ext.size(); ++i)
    if (close(ext[i].entries())) return r.effects[i];
  return std::nullopt;
}

std::optional<std::vector<Vec<Rational>>> rational_observables(const TheorySpec& t, const exact::RationalTheory& r,
                                                               const std::vector<BinaryMeasurement>& family) {
  std::vector<Vec<Rational>> out;
  for (const auto& m : family) {
    const auto plus = rational_effect(t, r, m.plus);
    const auto minus = rational_effect(t, r, m.minus);
    if (!plus || !minus) return std::nullopt;
    Vec<Rational> o(plus->size());
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = (*plus)[i] - (*minus)[i];
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace

ChshOptimum maximize_chsh(const TheoryRef& a, const TheoryRef& b, const std::vector<BinaryMeasurement>& family_a,
                          const std::vector<BinaryMeasurement>& family_b, const ChshOptions& opts) {
  if (!a || !b) throw DomainError("maximize_chsh: missing local theory");
  for (const auto& m : family_a) check_measurement(m, a->d, kDefaultTol);
  for (const auto& m : family_b) check_measurement(m, b->d, kDefaultTol);
  if (opts.arithmetic == lp::Arithmetic::exact && exact::has_rational_realization(a->name) &&
      exact::has_rational_realization(b->name)) {
    const auto ra = exact::rational_realization(a->name);
    const auto rb = exact::rational_realization(b->name);
    const auto oa = rational_observables(*a, ra, family_a);
    const auto ob = rational_observables(*b, rb, family_b);
    if (oa && ob) {
      const auto s = search_chsh(ra.effects, rb.effects, *oa, *ob);
      ChshOptimum out;
      out.value = s.best.value.convert_to<double>();
      out.exact_value = rational_string(s.best.value);
      out.choice = s.choice;
      out.lp_count = s.lp_count;
      const Matrix back = kron_matrix(ra.frame.inverse(), rb.frame.inverse());
      out.witness = JointState(back * exact::to_vector(s.best.phi), a, b);
      out.exact_witness = s.best.phi;
      out.a0 = family_a[out.choice[0]];
      out.a1 = family_a[out.choice[1]];
      out.b0 = family_b[out.choice[2]];
      out.b1 = family_b[out.choice[3]];
      return out;
    }
  }
  std::vector<Vec<double>> rays_a;
  std::vector<Vec<double>> rays_b;
  for (const auto& v : constraint_effects(*a, opts.ball_resolution, kDefaultTol)) rays_a.push_back(to_std(v));
  for (const auto& v : constraint_effects(*b, opts.ball_resolution, kDefaultTol)) rays_b.push_back(to_std(v));
  std::vector<Vec<double>> obs_a;
  std::vector<Vec<double>> obs_b;
  for (const auto& m : family_a) obs_a.push_back(to_std(m.observable()));
  for (const auto& m : family_b) obs_b.push_back(to_std(m.observable()));

  ChshOptimum out;
  Vec<double> phi;
  if (opts.arithmetic == lp::Arithmetic::exact) {
    auto s = search_chsh(to_exact(rays_a), to_exact(rays_b), to_exact(obs_a), to_exact(obs_b));
    out.value = s.best.value.convert_to<double>();
    out.exact_value = rational_string(s.best.value);
    out.choice = s.choice;
    out.lp_count = s.lp_count;
    phi = to_double(s.best.phi);
  } else {
    auto s = search_chsh(rays_a, rays_b, obs_a, obs_b);
    out.value = s.best.value;
    out.choice = s.choice;
    out.lp_count = s.lp_count;
    phi = s.best.phi;
  }
  out.witness = JointState(from_std(phi), a, b);
  out.a0 = family_a[out.choice[0]];
  out.a1 = family_a[out.choice[1]];
  out.b0 = family_b[out.choice[2]];
  out.b1 = family_b[out.choice[3]];
  return out;
}

ChshOptimum maximize_chsh(const TheoryRef& a, const TheoryRef& b, const ChshOptions& opts) {
  if (!a || !b) throw DomainError("maximize_chsh: missing local theory");
  const auto fa = default_measurements(*a, opts.ball_family);
  const auto fb = default_measurements(*b, opts.ball_family);
  if (opts.arithmetic == lp::Arithmetic::exact && exact::has_rational_realization(a->name) &&
      exact::has_rational_realization(b->name)) {
    const auto ra = exact::rational_realization(a->name);
    const auto rb = exact::rational_realization(b->name);
    const auto s = maximize_chsh_exact(ra, rb);
    ChshOptimum out;
    out.value = s.value.convert_to<double>();
    out.exact_value = rational_string(s.value);
    out.choice = s.choice;
    out.lp_count = s.lp_count;
    const Matrix back = kron_matrix(ra.frame.inverse(), rb.frame.inverse());
    out.witness = JointState(back * exact::to_vector(s.witness), a, b);
    out.exact_witness = s.witness;
    out.a0 = fa[out.choice[0]];
    out.a1 = fa[out.choice[1]];
    out.b0 = fb[out.choice[2]];
    out.b1 = fb[out.choice[3]];
    return out;
  }
  return maximize_chsh(a, b, fa, fb, opts);
}

ExactChshOptimum maximize_chsh_exact(const exact::RationalTheory& a, const exact::RationalTheory& b) {
  auto observables = [](const exact::RationalTheory& t) {
    std::vector<Vec<Rational>> out;
    for (const auto& e : t.effects) {
      Vec<Rational> o(e.size());
      // e - (u - e)
      for (std::size_t i = 0; i < e.size(); ++i) o[i] = 2 * e[i] - t.unit[i];
      out.push_back(o);
    }
    return out;
  };
  const auto s = search_chsh(a.effects, b.effects, observables(a), observables(b));
  ExactChshOptimum out;
  out.value = s.best.value;
  out.witness = s.best.phi;
  out.choice = s.choice;
  out.lp_count = s.lp_count;
  return out;
}

ExactSeparability is_separable_exact(const exact::RationalVector& phi, const exact::RationalTheory& a,
                                     const exact::RationalTheory& b) {
  if (phi.size() != a.unit.size() * b.unit.size()) throw DimensionError("is_separable_exact: length mismatch");
  const auto problem = product_hull_problem(a.states, b.states, phi);
  const auto sol = lp::solve(problem);
  ExactSeparability out;
  if (sol.status != lp::Status::infeasible) {
    out.kind = Separability::separable;
    out.weights = sol.x;
  } else {
    out.kind = Separability::entangled;
    out.farkas = sol.farkas;
    out.certificate_verified = lp::verify_farkas(problem, sol.farkas);
  }
  return out;
}

std::vector<Vector> max_tensor_vertices(const TheorySpec& a, const TheorySpec& b, double tol) {
  if (!a.effects.is_polytope_hull() || !b.effects.is_polytope_hull())
    throw DomainError("max_tensor_vertices: both locals must have polytope effect sets");
  const auto ra = constraint_effects(a, 0, tol);
  const auto rb = constraint_effects(b, 0, tol);
  std::vector<Vector> rows;
  for (const auto& g : ra)
    for (const auto& h : rb) rows.push_back(tensor(g, h));
  const int dim = (a.d + 1) * (b.d + 1);
  const int k = static_cast<int>(rows.size());
  const int pick = dim - 1;
  if (pick > k) return {};

  double combos = 1.0;
  for (int i = 0; i < pick; ++i) combos = combos * (k - i) / (i + 1);
  if (combos > 5e6) throw DomainError("max_tensor_vertices: too many active sets to enumerate");

  const Vector uu = tensor(Vector::Unit(a.d + 1, 0), Vector::Unit(b.d + 1, 0));
  Matrix all(k, dim);
  for (int r = 0; r < k; ++r) all.row(r) = rows[r].transpose();

  std::vector<Vector> vertices;
  std::vector<int> idx(pick);
  for (int i = 0; i < pick; ++i) idx[i] = i;
  Matrix sys(dim, dim);
  Vector rhs = Vector::Zero(dim);
  rhs[dim - 1] = 1.0;
  while (true) {
    for (int i = 0; i < pick; ++i) sys.row(i) = all.row(idx[i]);
    sys.row(dim - 1) = uu.transpose();
    Eigen::FullPivLU<Matrix> lu(sys);
    if (lu.rank() == dim) {
      const Vector x = lu.solve(rhs);
      if ((all * x).minCoeff() >= -tol) {
        bool seen = false;
        for (const auto& v : vertices)
          if ((v - x).cwiseAbs().maxCoeff() <= 1e-7) seen = true;
        if (!seen) vertices.push_back(x);
      }
    }
    int i = pick - 1;
    while (i >= 0 && idx[i] == k - pick + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
  return vertices;
}

JointState two_qubit_gpt(const Eigen::Vector3d& r_a, const Eigen::Vector3d& r_b, const Eigen::Matrix3d& t,
                         double tol) {
  using C = std::complex<double>;
  std::array<Eigen::Matrix2cd, 4> pauli;
  pauli[0] << 1, 0, 0, 1;
  pauli[1] << 0, 1, 1, 0;
  pauli[2] << 0, C(0, -1), C(0, 1), 0;
  pauli[3] << 1, 0, 0, -1;
  Eigen::Matrix4d coeff = Eigen::Matrix4d::Zero();
  coeff(0, 0) = 1.0;
  coeff.block<1, 3>(0, 1) = r_b.transpose();
  coeff.block<3, 1>(1, 0) = r_a;
  coeff.block<3, 3>(1, 1) = t;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (coeff(i, j) == 0.0) continue;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rho(r, c) += 0.25 * coeff(i, j) * pauli[i](r / 2, c / 2) * pauli[j](r % 2, c % 2);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw DomainError("two_qubit_gpt: density operator is not positive");
  Vector v(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[i * 4 + j] = coeff(i, j);
  static const TheoryRef qubit = share(zoo::euclidean_ball(3));
  return JointState(v, qubit, qubit);
}

std::string to_string(EntanglementKind k) {
  switch (k) {
    case EntanglementKind::separable:
      return "separable";
    case EntanglementKind::entangled_lp:
      return "entangled";
    case EntanglementKind::entangled_chsh_witness:
      return "entangled (CHSH witness)";
    case EntanglementKind::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

EntanglementCertificate certify_entanglement(const JointState& phi, const std::optional<ChshScenario>& witness,
                                             const SeparabilityOptions& opts) {
  EntanglementCertificate cert;
  cert.lp = is_separable(phi, opts);
  if (witness) cert.chsh = chsh_value(*witness, opts.tol);
  switch (cert.lp.kind) {
    case Separability::separable:
      cert.kind = EntanglementKind::separable;
      break;
    case Separability::entangled:
      cert.kind = EntanglementKind::entangled_lp;
      break;
    case Separability::inconclusive:
      cert.kind = cert.chsh && *cert.chsh > 2.0 + opts.tol ? EntanglementKind::entangled_chsh_witness
                                                           : EntanglementKind::inconclusive;
      break;
  }
  return cert;
}

double sphere_covering_radius(int n, const std::vector<Vector>& points) {
  if (points.empty()) return 2.0;
  if (n == 1) {
    bool plus = false;
    bool minus = false;
    for (const auto& p : points) (p[0] > 0 ? plus : minus) = true;
    return plus && minus ? 0.0 : 2.0;
  }
  if (n == 2) {
    std::vector<double> angles;
    for (const auto& p : points) angles.push_back(std::atan2(p[1], p[0]));
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    return 2.0 * std::sin(gap / 4.0);
  }
  std::vector<Vector> probes;
  if (n == 3) {
    probes = sphere_points(3, 20000);
  } else {
    Sampler s(0xc0ffee);
    for (int i = 0; i < 20000; ++i) probes.push_back(s.unit_vector(n));
  }
  double worst = 0.0;
  for (const auto& q : probes) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) best = std::min(best, (p - q).squaredNorm());
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace gptlab
