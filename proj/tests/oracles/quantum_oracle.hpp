#pragma once

// Plain complex-matrix quantum mechanics for one and two qubits. Shares no
// code with the library: densities and projectors are built from Pauli
// matrices and probabilities are traces.

#include <array>
#include <complex>

namespace oracle {

using cplx = std::complex<double>;
using M2 = std::array<std::array<cplx, 2>, 2>;
using M4 = std::array<std::array<cplx, 4>, 4>;
using R3 = std::array<double, 3>;

inline M2 pauli(int k) {
  const cplx i(0, 1);
  if (k == 0) return {{{0, 1}, {1, 0}}};
  if (k == 1) return {{{0, -i}, {i, 0}}};
  return {{{1, 0}, {0, -1}}};
}

/// (I + r.sigma) / 2
inline M2 bloch_density(const R3& r) {
  M2 rho{{{0.5, 0}, {0, 0.5}}};
  for (int k = 0; k < 3; ++k) {
    const M2 s = pauli(k);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) rho[a][b] += 0.5 * r[k] * s[a][b];
  }
  return rho;
}

inline cplx trace_product(const M2& x, const M2& y) {
  cplx t = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t += x[a][b] * y[b][a];
  return t;
}

/// tr(rho_r P_v) for the projector onto Bloch direction v.
inline double qubit_probability(const R3& r, const R3& v) {
  return trace_product(bloch_density(r), bloch_density(v)).real();
}

inline M4 kron(const M2& x, const M2& y) {
  M4 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out[2 * a + c][2 * b + d] = x[a][b] * y[c][d];
  return out;
}

/// |psi-><psi-| with |psi-> = (|01> - |10>) / sqrt2.
inline M4 singlet() {
  M4 rho{};
  rho[1][1] = 0.5;
  rho[2][2] = 0.5;
  rho[1][2] = -0.5;
  rho[2][1] = -0.5;
  return rho;
}

inline double trace_product(const M4& x, const M4& y) {
  cplx t = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t += x[a][b] * y[b][a];
  return t.real();
}

/// tr(rho (P_a (x) P_b)).
inline double joint_probability(const M4& rho, const R3& a, const R3& b) {
  return trace_product(rho, kron(bloch_density(a), bloch_density(b)));
}

/// E(a, b) for spin measurements along a and b.
inline double correlation(const M4& rho, const R3& a, const R3& b) {
  const R3 na{-a[0], -a[1], -a[2]};
  const R3 nb{-b[0], -b[1], -b[2]};
  return joint_probability(rho, a, b) + joint_probability(rho, na, nb) - joint_probability(rho, a, nb) -
         joint_probability(rho, na, b);
}

}  // namespace oracle
