#pragma once

// Dense two-phase tableau simplex over an arbitrary ordered field.
//
// Works for `double` (tolerance-based pivoting) and for exact rationals
// (`gptlab::Rational`), where every comparison is exact and Bland's rule
// guarantees termination.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace gptlab {

using Rational = boost::multiprecision::mpq_rational;

namespace lp {

enum class Status { optimal, infeasible, unbounded };
enum class Arithmetic { floating, exact };

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double pivot_eps() { return 1e-11; }
  static double feasibility_eps() { return 1e-9; }
  static constexpr bool exact = false;
};

template <>
struct ScalarTraits<Rational> {
  static Rational pivot_eps() { return Rational(0); }
  static Rational feasibility_eps() { return Rational(0); }
  static constexpr bool exact = true;
};

/// minimize c.x subject to A x = b, x >= 0.
template <class Scalar>
struct Problem {
  std::vector<std::vector<Scalar>> A;
  std::vector<Scalar> b;
  std::vector<Scalar> c;

  std::size_t rows() const { return A.size(); }
  std::size_t cols() const { return c.size(); }
};

template <class Scalar>
struct Solution {
  Status status = Status::infeasible;
  std::vector<Scalar> x;
  Scalar objective{0};
  /// Phase-one optimum (sum of artificials). Zero iff feasible.
  Scalar infeasibility{0};
  /// Farkas vector y with y.A <= 0 and y.b > 0 when infeasible.
  std::vector<Scalar> farkas;
  std::size_t pivots = 0;
};

struct Options {
  /// Phase-one optimum above this is reported infeasible (floating only).
  double feasibility_tol = 1e-9;
  /// Switch floating runs from Dantzig to Bland after this many pivots.
  std::size_t bland_after = 5000;
  std::size_t max_pivots = 200000;
};

namespace detail {

template <class Scalar>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), Scalar(0)) {}

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  // Row `rows_` is the objective row, column `cols_` the right-hand side.
  Scalar& cost(std::size_t c) { return at(rows_, c); }
  Scalar& rhs(std::size_t r) { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Scalar inv = Scalar(1) / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = Scalar(1);
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const Scalar f = at(r, pc);
      if (f == Scalar(0)) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        const Scalar& v = at(pr, c);
        if (v != Scalar(0)) at(r, c) -= f * v;
      }
      at(r, pc) = Scalar(0);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

inline double abs_value(double v) { return v < 0 ? -v : v; }
inline Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }

template <class Scalar>
bool negative(const Scalar& v) {
  return v < -ScalarTraits<Scalar>::pivot_eps();
}

template <class Scalar>
bool positive(const Scalar& v) {
  return v > ScalarTraits<Scalar>::pivot_eps();
}

// Runs simplex iterations on the objective row restricted to `allowed` columns.
// Returns false when unbounded.
template <class Scalar>
bool iterate(Tableau<Scalar>& t, std::vector<std::size_t>& basis,
             const std::vector<bool>& allowed, const Options& opts,
             std::size_t& pivots) {
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  std::size_t local = 0;
  while (true) {
    const bool bland = ScalarTraits<Scalar>::exact || local >= opts.bland_after;
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c < n; ++c) {
      if (!allowed[c] || !negative(t.cost(c))) continue;
      if (!enter) {
        enter = c;
        if (bland) break;
      } else if (t.cost(c) < t.cost(*enter)) {
        enter = c;
      }
    }
    if (!enter) return true;

    std::optional<std::size_t> leave;
    Scalar best_ratio{0};
    for (std::size_t r = 0; r < m; ++r) {
      const Scalar& a = t.at(r, *enter);
      if (!positive(a)) continue;
      Scalar ratio = t.rhs(r) / a;
      if (!leave || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!leave) return false;
    t.pivot(*leave, *enter);
    basis[*leave] = *enter;
    ++pivots;
    ++local;
    if (pivots > opts.max_pivots) return true;
  }
}

}  // namespace detail

/// Solves a standard-form LP with the two-phase method.
template <class Scalar>
Solution<Scalar> solve(const Problem<Scalar>& problem, const Options& opts = {}) {
  const std::size_t m = problem.rows();
  const std::size_t n = problem.cols();
  Solution<Scalar> sol;

  // Columns: [0, n) original, [n, n+m) artificial.
  detail::Tableau<Scalar> t(m, n + m);
  std::vector<Scalar> sign(m, Scalar(1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (problem.b[r] < Scalar(0)) sign[r] = Scalar(-1);
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign[r] * problem.A[r][c];
    t.at(r, n + r) = Scalar(1);
    t.rhs(r) = sign[r] * problem.b[r];
    basis[r] = n + r;
  }
  // Phase one objective: sum of artificials, expressed in nonbasic columns.
  for (std::size_t c = 0; c <= n + m; ++c) {
    if (c >= n && c < n + m) continue;
    Scalar s{0};
    for (std::size_t r = 0; r < m; ++r) s -= t.at(r, c);
    t.cost(c) = s;
  }

  std::vector<bool> allowed(n + m, true);
  detail::iterate(t, basis, allowed, opts, sol.pivots);
  sol.infeasibility = -t.cost(n + m);

  const bool infeasible = ScalarTraits<Scalar>::exact
                              ? sol.infeasibility > Scalar(0)
                              : sol.infeasibility > Scalar(opts.feasibility_tol);
  if (infeasible) {
    sol.status = Status::infeasible;
    // Reduced cost of artificial r is 1 - y_r.
    sol.farkas.resize(m);
    for (std::size_t r = 0; r < m; ++r) sol.farkas[r] = sign[r] * (Scalar(1) - t.cost(n + r));
    return sol;
  }

  // Drive remaining artificials out of the basis; rows with no pivot are redundant.
  std::vector<bool> redundant(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    std::optional<std::size_t> col;
    for (std::size_t c = 0; c < n; ++c) {
      const Scalar& a = t.at(r, c);
      if (detail::positive(a) || detail::negative(a)) {
        if (!col || detail::abs_value(a) > detail::abs_value(t.at(r, *col))) col = c;
        if (ScalarTraits<Scalar>::exact) break;
      }
    }
    if (col) {
      t.pivot(r, *col);
      basis[r] = *col;
      ++sol.pivots;
    } else {
      redundant[r] = true;
    }
  }

  // Phase two.
  for (std::size_t c = 0; c <= n + m; ++c) t.cost(c) = c < n ? problem.c[c] : Scalar(0);
  for (std::size_t r = 0; r < m; ++r) {
    if (redundant[r]) {
      // Keep the artificial basic at zero; block it from ever entering.
      continue;
    }
    const Scalar cb = problem.c[basis[r]];
    if (cb == Scalar(0)) continue;
    for (std::size_t c = 0; c <= n + m; ++c) t.cost(c) -= cb * t.at(r, c);
  }
  for (std::size_t c = n; c < n + m; ++c) allowed[c] = false;
  if (!detail::iterate(t, basis, allowed, opts, sol.pivots)) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  sol.x.assign(n, Scalar(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) sol.x[basis[r]] = t.rhs(r);
  Scalar obj{0};
  for (std::size_t c = 0; c < n; ++c) obj += problem.c[c] * sol.x[c];
  sol.objective = obj;
  return sol;
}

/// Independent check of an infeasibility certificate: y.A <= 0 and y.b > 0.
template <class Scalar>
bool verify_farkas(const Problem<Scalar>& problem, const std::vector<Scalar>& y,
                   const Scalar& tol = Scalar(0)) {
  if (y.size() != problem.rows()) return false;
  Scalar yb{0};
  for (std::size_t r = 0; r < problem.rows(); ++r) yb += y[r] * problem.b[r];
  if (!(yb > tol)) return false;
  for (std::size_t c = 0; c < problem.cols(); ++c) {
    Scalar s{0};
    for (std::size_t r = 0; r < problem.rows(); ++r) s += y[r] * problem.A[r][c];
    if (s > tol) return false;
  }
  return true;
}

/// Exact image of a floating problem: every double is a dyadic rational.
inline Problem<Rational> to_rational(const Problem<double>& p) {
  Problem<Rational> q;
  q.A.resize(p.rows());
  for (std::size_t r = 0; r < p.rows(); ++r)
    q.A[r].assign(p.A[r].begin(), p.A[r].end());
  q.b.assign(p.b.begin(), p.b.end());
  q.c.assign(p.c.begin(), p.c.end());
  return q;
}

}  // namespace lp
}  // namespace gptlab
