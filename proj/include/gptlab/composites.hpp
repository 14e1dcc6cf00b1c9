#pragma once

// Bipartite systems: joint vectors, product and max-tensor state sets,
// separability, no-signalling and CHSH.
//
// Joint vectors are flattened A-major: entry (i, j) sits at i * (d_B + 1) + j.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gptlab/exact.hpp"
#include "gptlab/gpt_core.hpp"

namespace gptlab {

using TheoryRef = std::shared_ptr<const TheorySpec>;

inline TheoryRef share(TheorySpec t) { return std::make_shared<const TheorySpec>(std::move(t)); }

/// Kronecker product x (x) y in A-major order.
Vector tensor(const Vector& x, const Vector& y);
Vector tensor(const GptVector& x, const GptVector& y);

class JointState {
 public:
  JointState() = default;
  /// Throws DomainError unless (u_A (x) u_B) . v = 1 within tol.
  JointState(Vector v, TheoryRef a, TheoryRef b, double tol = kDefaultTol);
  /// Candidate joint vector with only the length checked. Used for vectors
  /// under test, e.g. deliberately corrupted ones.
  static JointState unchecked(Vector v, TheoryRef a, TheoryRef b);
  static JointState product(const GptVector& x, const GptVector& y, TheoryRef a, TheoryRef b);

  const Vector& vector() const { return v_; }
  const TheorySpec& local_a() const { return *a_; }
  const TheorySpec& local_b() const { return *b_; }
  const TheoryRef& local_a_ref() const { return a_; }
  const TheoryRef& local_b_ref() const { return b_; }

  /// (u_A (x) u_B) . v
  double normalization() const { return v_[0]; }
  /// (I (x) u_B) v and (u_A (x) I) v.
  Vector marginal_a() const;
  Vector marginal_b() const;
  double pairing(const GptVector& ea, const GptVector& eb) const;
  /// v reshaped to a (d_A+1) x (d_B+1) matrix.
  Matrix as_matrix() const;

 private:
  Vector v_;
  TheoryRef a_;
  TheoryRef b_;
};

/// Two-outcome measurement {plus, minus}; plus + minus must equal u.
struct BinaryMeasurement {
  GptVector plus;
  GptVector minus;

  /// {e, u - e}
  static BinaryMeasurement from_effect(const GptVector& e);
  /// plus - minus
  Vector observable() const { return plus.entries() - minus.entries(); }
};

struct ChshScenario {
  BinaryMeasurement a0, a1, b0, b1;
  JointState state;
};

/// p(++) + p(--) - p(+-) - p(-+)
double correlator(const JointState& state, const BinaryMeasurement& a, const BinaryMeasurement& b);

/// E(a0,b0) + E(a0,b1) + E(a1,b0) - E(a1,b1). Throws DomainError when a
/// measurement pair does not sum to the local unit effect within tol.
double chsh_value(const ChshScenario& s, double tol = kDefaultTol);

/// Binary measurements {e, u - e} for every extremal effect of a polytope
/// theory, or {eps_v, eps_-v} for `ball_resolution` sphere directions.
std::vector<BinaryMeasurement> default_measurements(const TheorySpec& theory, int ball_resolution = 30);

/// Extreme rays of the cone spanned by `generators`: zero vectors,
/// duplicates and conic combinations of the others are dropped.
std::vector<Vector> irredundant_rays(const std::vector<Vector>& generators, double tol = kDefaultTol);

enum class Separability { separable, entangled, inconclusive };
std::string to_string(Separability s);

struct SeparabilityOptions {
  double tol = kDefaultTol;
  lp::Arithmetic arithmetic = lp::Arithmetic::floating;
  /// Sphere points per ball-shaped local state space.
  int ball_resolution = 200;
};

struct WeightedProduct {
  int a = 0;  // index into the A-side extreme point list
  int b = 0;
  double weight = 0.0;
};

struct SeparabilityVerdict {
  Separability kind = Separability::inconclusive;
  /// Nonzero weights of the decomposition when separable.
  std::vector<WeightedProduct> weights;
  /// Phase-one optimum of the hull LP (zero iff feasible).
  double infeasibility = 0.0;
  /// Largest distance from a unit-sphere point to the nearest sample point,
  /// maximized over both sides; 0 when both sides are polytopes.
  double discretization_radius = 0.0;
  int resolution = 0;
  /// Entangled verdicts only: the Farkas vector passed an independent check.
  bool certificate_verified = false;
  std::vector<double> farkas;
};

/// LP test for membership in the hull of products of local extreme points.
/// Ball-shaped locals are sampled, so for them infeasibility only yields
/// `inconclusive` (a ball with d = 1 is sampled exactly and counts as a polytope).
SeparabilityVerdict is_separable(const JointState& phi, const SeparabilityOptions& opts = {});

struct MaxTensorOptions {
  double tol = kDefaultTol;
  /// Sample count on the A side when both locals are balls.
  int ball_resolution = 200;
};

struct MaxTensorReport {
  bool member = false;
  double normalization_error = 0.0;
  /// Smallest pairing with a product of extremal effects.
  double min_pairing = 0.0;
};

/// Normalization plus positivity on products of extremal effects. A ball
/// side is handled in closed form; if both sides are balls, side A is sampled.
MaxTensorReport max_tensor_report(const JointState& phi, const MaxTensorOptions& opts = {});
bool in_max_tensor(const JointState& phi, double tol = kDefaultTol);

/// p(a b | x y) for binary outcomes, a,b in {0 = plus, 1 = minus}.
struct CorrelationTable {
  int inputs_a = 0;
  int inputs_b = 0;
  std::vector<double> p;

  CorrelationTable(int na, int nb) : inputs_a(na), inputs_b(nb), p(static_cast<std::size_t>(na * nb * 4), 0.0) {}
  double& at(int x, int y, int a, int b) { return p[static_cast<std::size_t>(((x * inputs_b + y) * 2 + a) * 2 + b)]; }
  double at(int x, int y, int a, int b) const {
    return p[static_cast<std::size_t>(((x * inputs_b + y) * 2 + a) * 2 + b)];
  }
};

CorrelationTable correlation_table(const JointState& phi, const std::vector<BinaryMeasurement>& fa,
                                   const std::vector<BinaryMeasurement>& fb);

/// Every conditional distribution is nonnegative and sums to 1, and each
/// side's marginal is independent of the other side's input.
bool no_signalling_table(const CorrelationTable& table, double tol = kDefaultTol);

struct NoSignallingOptions {
  double tol = kDefaultTol;
  int ball_resolution = 24;
};

/// False when phi is not in the max tensor product; otherwise the table test
/// over all pairs of default measurements.
bool no_signalling_check(const JointState& phi, const NoSignallingOptions& opts = {});

struct ChshOptions {
  lp::Arithmetic arithmetic = lp::Arithmetic::floating;
  /// Effect directions imposing positivity for ball-shaped locals; the
  /// sampled max tensor product is an outer approximation.
  int ball_resolution = 12;
  /// Measurement directions per ball-shaped local in the default family.
  int ball_family = 4;
};

struct ChshOptimum {
  double value = 0.0;
  /// Exact optimum as "p/q" for exact runs; empty otherwise.
  std::string exact_value;
  JointState witness;
  /// Indices x0, x1, y0, y1 into the measurement families.
  std::array<int, 4> choice{};
  BinaryMeasurement a0, a1, b0, b1;
  std::size_t lp_count = 0;
  /// Optimizer in the rational frame of the locals; empty unless that frame was used.
  exact::RationalVector exact_witness;

  ChshScenario scenario() const { return {a0, a1, b0, b1, witness}; }
};

/// Maximizes CHSH over the max tensor product and all choices of two
/// measurements per side from the families. Exact runs use the rational
/// frame of a theory when one exists and exact images of the doubles
/// otherwise; the witness is always reported in the floating frame.
ChshOptimum maximize_chsh(const TheoryRef& a, const TheoryRef& b, const std::vector<BinaryMeasurement>& family_a,
                          const std::vector<BinaryMeasurement>& family_b, const ChshOptions& opts = {});
ChshOptimum maximize_chsh(const TheoryRef& a, const TheoryRef& b, const ChshOptions& opts = {});

struct ExactChshOptimum {
  Rational value;
  exact::RationalVector witness;
  std::array<int, 4> choice{};
  std::size_t lp_count = 0;
};

/// Fully rational CHSH maximization over measurements {e, u - e} built from
/// the rational extremal effects.
ExactChshOptimum maximize_chsh_exact(const exact::RationalTheory& a, const exact::RationalTheory& b);

struct ExactSeparability {
  Separability kind = Separability::inconclusive;
  std::vector<Rational> weights;
  std::vector<Rational> farkas;
  bool certificate_verified = false;
};

/// Hull-of-products LP in exact arithmetic on rational data.
ExactSeparability is_separable_exact(const exact::RationalVector& phi, const exact::RationalTheory& a,
                                     const exact::RationalTheory& b);

/// Vertices of the max tensor product of two polytope theories, by
/// enumerating active constraint sets.
std::vector<Vector> max_tensor_vertices(const TheorySpec& a, const TheorySpec& b, double tol = kDefaultTol);

/// Two-qubit state in Pauli coordinates: blocks (1, r_B; r_A, T). Throws
/// DomainError when the density operator has an eigenvalue below -tol.
JointState two_qubit_gpt(const Eigen::Vector3d& r_a, const Eigen::Vector3d& r_b, const Eigen::Matrix3d& t,
                         double tol = kDefaultTol);

enum class EntanglementKind { separable, entangled_lp, entangled_chsh_witness, inconclusive };
std::string to_string(EntanglementKind k);

struct EntanglementCertificate {
  EntanglementKind kind = EntanglementKind::inconclusive;
  SeparabilityVerdict lp;
  std::optional<double> chsh;
};

/// Separability LP first; when it is inconclusive, a scenario with CHSH
/// above 2 + tol certifies entanglement.
EntanglementCertificate certify_entanglement(const JointState& phi, const std::optional<ChshScenario>& witness,
                                             const SeparabilityOptions& opts = {});

/// Estimated covering radius of a finite point set on S^{n-1}: largest
/// distance from a dense probe set to the nearest point.
double sphere_covering_radius(int n, const std::vector<Vector>& points);

}  // namespace gptlab
