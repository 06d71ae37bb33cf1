#pragma once

// Test-only reference computations. Nothing here calls into the library's
// eigen-solver, analytic propagator or TPM code paths.

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;
using M4 = std::array<std::array<C, 4>, 4>;

inline M4 mul(const M4& a, const M4& b) {
  M4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

/// exp(a) by scaling and squaring of a truncated Taylor series.
inline M4 taylor_expm(M4 a) {
  double norm = 0.0;
  for (auto& row : a)
    for (auto& x : row) norm = std::max(norm, std::abs(x));
  int squarings = 0;
  while (norm > 0.05) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& row : a)
    for (auto& x : row) x *= scale;

  M4 result{};
  M4 term{};
  for (int i = 0; i < 4; ++i) result[i][i] = term[i][i] = 1.0;
  for (int k = 1; k < 30; ++k) {
    term = mul(term, a);
    for (auto& row : term)
      for (auto& x : row) x /= static_cast<double>(k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

/// H_tot written out entry by entry for sz = diag(-1, +1):
/// diag(-wL, 0, 0, +wL) plus (w_int/2) coupling |10> <-> |11>.
inline M4 total_hamiltonian(double wL, double wint) {
  M4 h{};
  h[0][0] = -wL;
  h[3][3] = wL;
  h[2][3] = h[3][2] = wint / 2.0;
  return h;
}

/// exp(-i H_tot t) via Taylor series.
inline M4 propagator(double wL, double wint, double t) {
  M4 a = total_hamiltonian(wL, wint);
  for (auto& row : a)
    for (auto& x : row) x *= C(0.0, -t);
  return taylor_expm(a);
}

/// Populations of exp(-beta wL sz)/Z for one qubit, (p0, p1).
inline std::array<double, 2> gibbs(double beta, double wL) {
  const double e0 = std::exp(beta * wL);   // <0|exp(-beta wL sz)|0>, sz|0> = -|0>
  const double e1 = std::exp(-beta * wL);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

/// p(psi_A, phi_B) for the thermal product state with
/// beta_A = ln(alpha/(1-alpha)) / (2 wL).
inline std::array<double, 4> thermal_populations(double alpha, double beta_B, double wL) {
  const auto a = gibbs(std::log(alpha / (1.0 - alpha)) / (2.0 * wL), wL);
  const auto b = gibbs(beta_B, wL);
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

struct Tpm {
  double joint[4][4]{};  // [in][fin]
  double p_fin[4]{};
  double sigma[4][4]{};  // valid where joint > 0
  double dE_moment[6]{};
  double ds_moment[6]{};
};

/// Brute-force TPM statistics from the Taylor propagator.
inline Tpm tpm(double wL, double wint, double t, double alpha, double beta_B) {
  const M4 U = propagator(wL, wint, t);
  const auto p = thermal_populations(alpha, beta_B, wL);
  const int energy[4] = {-2, 0, 0, 2};
  Tpm out;
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      out.joint[n][m] = std::norm(U[m][n]) * p[n];
      out.p_fin[m] += out.joint[n][m];
    }
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      if (out.joint[n][m] <= 0.0) continue;
      out.sigma[n][m] = std::log(p[n]) - std::log(out.p_fin[m]);
      const double de = energy[m] - energy[n];
      for (int h = 1; h <= 5; ++h) {
        out.dE_moment[h] += out.joint[n][m] * std::pow(de, h);
        out.ds_moment[h] += out.joint[n][m] * std::pow(out.sigma[n][m], h);
      }
    }
  return out;
}

}  // namespace oracle
