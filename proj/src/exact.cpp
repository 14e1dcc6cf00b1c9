#include "gptlab/exact.hpp"

#include <charconv>
#include <cmath>

#include "gptlab/errors.hpp"
#include "gptlab/model_zoo.hpp"

namespace gptlab::exact {

double Biquadratic::to_double() const {
  return c_[0].convert_to<double>() + c_[1].convert_to<double>() * std::sqrt(2.0) +
         c_[2].convert_to<double>() * std::sqrt(3.0) + c_[3].convert_to<double>() * std::sqrt(6.0);
}

Biquadratic operator+(const Biquadratic& x, const Biquadratic& y) {
  return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
}

Biquadratic operator-(const Biquadratic& x, const Biquadratic& y) {
  return {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2], x.c_[3] - y.c_[3]};
}

Biquadratic operator*(const Biquadratic& x, const Biquadratic& y) {
  const auto& a = x.c_;
  const auto& b = y.c_;
  // Basis 1, s2, s3, s6 with s2 s3 = s6, s2 s6 = 2 s3, s3 s6 = 3 s2.
  return {a[0] * b[0] + 2 * a[1] * b[1] + 3 * a[2] * b[2] + 6 * a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + 3 * (a[2] * b[3] + a[3] * b[2]),
          a[0] * b[2] + a[2] * b[0] + 2 * (a[1] * b[3] + a[3] * b[1]),
          a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1]};
}

Biquadratic dot(const BiquadraticVector& x, const BiquadraticVector& y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  Biquadratic s;
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i];
  return s;
}

ExactTrit exact_trit() {
  const Rational half(1, 2);
  // (cos, sin) of 2pi/3, 4pi/3, 2pi times r_3 = sqrt2.
  const Biquadratic neg_half_sqrt2(0, -half, 0, 0);
  const Biquadratic half_sqrt6(0, 0, 0, half);
  const Biquadratic neg_half_sqrt6(0, 0, 0, -half);
  const Biquadratic one(Rational(1));
  const Biquadratic zero;
  ExactTrit t;
  t.states = {{one, neg_half_sqrt2, half_sqrt6}, {one, neg_half_sqrt2, neg_half_sqrt6}, {one, Biquadratic::sqrt2(), zero}};
  const Biquadratic third(Rational(1, 3));
  for (const auto& s : t.states) {
    BiquadraticVector e;
    for (const auto& x : s) e.push_back(third * x);
    t.effects.push_back(e);
  }
  t.unit = {one, zero, zero};
  return t;
}

namespace {

Matrix as_columns(const std::vector<GptVector>& vs) {
  Matrix m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vs[k].entries();
  return m;
}

Matrix as_columns(const std::vector<RationalVector>& vs) {
  Matrix m(static_cast<Eigen::Index>(vs.front().size()), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = to_vector(vs[k]);
  return m;
}

RationalTheory simplex_realization(int N, const std::string& name) {
  RationalTheory t;
  t.name = name;
  t.d = N;
  t.unit.assign(N + 1, Rational(0));
  t.unit[0] = 1;
  const TheorySpec ref = name == "bit" ? zoo::classical_bit() : zoo::classical_simplex(N);
  if (N == 1) {
    // Already rational: (1, -1), (1, 1) and their halves.
    for (const auto& s : ref.states.as_polytope().vertices) t.states.push_back(to_rational(s.entries()));
    for (const auto& e : ref.effects.extremal()) t.effects.push_back(to_rational(e.entries()));
    t.frame = Matrix::Identity(2, 2);
    return t;
  }
  const Rational inv(1, N + 1);
  for (int j = 0; j <= N; ++j) {
    RationalVector s(N + 1, Rational(0));
    RationalVector e(N + 1, -inv);
    s[0] = 1;
    e[0] = inv;
    if (j < N) {
      s[j + 1] = 1;
      e[j + 1] += 1;
    } else {
      for (int a = 1; a <= N; ++a) s[a] = -1;
    }
    t.states.push_back(s);
    t.effects.push_back(e);
  }
  const Matrix zf = as_columns(ref.states.as_polytope().vertices);
  t.frame = as_columns(t.states) * zf.inverse();
  return t;
}

RationalTheory square_realization(const std::string& name) {
  RationalTheory t;
  t.name = name;
  t.d = 2;
  t.unit = {1, 0, 0};
  // Spatial part scaled by 1 / r_4 = 2^{-1/4}.
  t.states = {{1, 0, 1}, {1, -1, 0}, {1, 0, -1}, {1, 1, 0}};
  const Rational h(1, 2);
  t.effects = {{h, h, h}, {h, -h, h}, {h, -h, -h}, {h, h, -h}};
  const double s = 1.0 / zoo::PolygonParams::make(4).radius;
  t.frame = Eigen::Vector3d(1.0, s, s).asDiagonal();
  return t;
}

}  // namespace

RationalTheory rational_realization(const std::string& name) {
  if (name == "bit") return simplex_realization(1, name);
  if (name == "boxworld" || name == "polygon:4") return square_realization(name);
  if (name.rfind("simplex:", 0) == 0) {
    int n = 0;
    const char* first = name.data() + 8;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && ptr == last && n >= 1) return simplex_realization(n, name);
  }
  throw DomainError("no rational realization for '" + name + "'");
}

bool has_rational_realization(const std::string& name) {
  try {
    rational_realization(name);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::vector<RationalVector> pairing_table(const RationalTheory& theory) {
  std::vector<RationalVector> table;
  for (const auto& e : theory.effects) {
    RationalVector row;
    for (const auto& s : theory.states) {
      Rational p = 0;
      for (std::size_t k = 0; k < s.size(); ++k) p += e[k] * s[k];
      row.push_back(p);
    }
    table.push_back(row);
  }
  return table;
}

Vector to_vector(const RationalVector& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].convert_to<double>();
  return out;
}

RationalVector to_rational(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace gptlab::exact
