#pragma once

// Exact arithmetic realizations of the zoo theories whose pairings are
// rational numbers.
//
// A theory can be re-expressed in any invertible linear frame L (states
// zeta -> L zeta, effects eps -> L^{-T} eps) without changing a single
// probability. Some zoo theories become rational in a suitable frame, which
// lets the LP-based checks run in exact arithmetic.

#include <array>
#include <string>
#include <vector>

#include "gptlab/gpt_core.hpp"
#include "gptlab/lp.hpp"

namespace gptlab::exact {

using RationalVector = std::vector<Rational>;

/// Element a + b sqrt2 + c sqrt3 + d sqrt6 of the field Q(sqrt2, sqrt3).
class Biquadratic {
 public:
  Biquadratic() = default;
  Biquadratic(Rational a) : c_{std::move(a), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Biquadratic(Rational a, Rational sqrt2, Rational sqrt3, Rational sqrt6)
      : c_{std::move(a), std::move(sqrt2), std::move(sqrt3), std::move(sqrt6)} {}

  static Biquadratic sqrt2() { return {0, 1, 0, 0}; }
  static Biquadratic sqrt3() { return {0, 0, 1, 0}; }

  const Rational& rational_part() const { return c_[0]; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  double to_double() const;

  friend Biquadratic operator+(const Biquadratic& x, const Biquadratic& y);
  friend Biquadratic operator-(const Biquadratic& x, const Biquadratic& y);
  friend Biquadratic operator*(const Biquadratic& x, const Biquadratic& y);
  friend bool operator==(const Biquadratic& x, const Biquadratic& y) { return x.c_ == y.c_; }

 private:
  std::array<Rational, 4> c_{};
};

using BiquadraticVector = std::vector<Biquadratic>;

Biquadratic dot(const BiquadraticVector& x, const BiquadraticVector& y);

/// Polygon N = 3 exactly: r_3 = sqrt2, cos and sin of multiples of 2pi/3 lie
/// in Q(sqrt3), and the odd-N effect prefactor 1/(1 + r_3^2) is 1/3.
struct ExactTrit {
  std::vector<BiquadraticVector> states;
  std::vector<BiquadraticVector> effects;  // eps_0, eps_1, eps_2
  BiquadraticVector unit;
};

ExactTrit exact_trit();

/// A theory with rational states and rational effect generators, related to
/// the floating zoo theory of the same name by `frame`.
struct RationalTheory {
  std::string name;
  int d = 0;
  std::vector<RationalVector> states;
  /// Extremal effects, same order as `TheorySpec::effects.extremal()`.
  std::vector<RationalVector> effects;
  RationalVector unit;
  /// L with rational_state = L * float_state and rational_effect = L^{-T} * float_effect.
  Matrix frame;
};

/// Available for "bit", "simplex:N" and "polygon:4" / "boxworld".
RationalTheory rational_realization(const std::string& name);
bool has_rational_realization(const std::string& name);

/// [i][j] = effects[i] . states[j]
std::vector<RationalVector> pairing_table(const RationalTheory& theory);

Vector to_vector(const RationalVector& v);
RationalVector to_rational(const Vector& v);

}  // namespace gptlab::exact
