#pragma once

// Two-qubit Hamiltonian model of the controlled-rotation gate.
//
// Natural units hbar = 1. Times are plain times; callers that work in the
// dimensionless omega_L * t should divide by omega_L first.

#include <array>

#include "gatetherm/linalg.hpp"

namespace gatetherm {

class ModelParams {
 public:
  /// Throws std::invalid_argument unless omega_L > 0 and omega_int >= 0.
  ModelParams(double omega_L, double omega_int);

  double omega_L() const { return omega_L_; }
  double omega_int() const { return omega_int_; }
  /// sqrt(omega_L^2 + omega_int^2) / 2
  double delta() const { return delta_; }

 private:
  double omega_L_;
  double omega_int_;
  double delta_;
};

struct Hamiltonians {
  TwoQubitOperator local;        // (omega_L/2)(sz x 1 + 1 x sz)
  TwoQubitOperator interaction;  // (omega_int/2)|1><1|_A x sx_B
  TwoQubitOperator total;
};

Hamiltonians hamiltonians(const ModelParams& p);

struct TrajectoryCoeffs {
  Complex h1;
  Complex h2;
};

TrajectoryCoeffs h_coeffs(const ModelParams& p, double t);

struct Propagator {
  double t = 0.0;
  Complex h1;
  Complex h2;
  TwoQubitOperator U;
};

/// Closed-form exp(-i H_tot t):
///   |00> -> e^{i wL t}|00>,  |01> -> |01>,
///   |10> -> e^{-i wL t/2}(h1|10> + h2|11>),
///   |11> -> e^{-i wL t/2}(h2|10> + h1*|11>).
Propagator propagator_analytic(const ModelParams& p, double t);

/// Conditional rotation R_B(t) = cos(phi) 1 - i sin(phi) n.sigma acting on B
/// when A = |1>, with n = (sin zeta, 0, cos zeta).
struct RotationDecomposition {
  double zeta = 0.0;
  double phi = 0.0;
  std::array<double, 3> axis{};

  Mat2 rotation() const;
};

/// Throws std::domain_error when omega_int == 0 (the axis is undefined).
RotationDecomposition rotation_decomposition(const ModelParams& p, double t);

class ThermalSpec {
 public:
  /// alpha in (0,1) sets qubit A's populations (p(1_A) = 1 - alpha);
  /// beta_B is qubit B's inverse temperature in units of 1/omega_L.
  ThermalSpec(double alpha, double beta_B, const ModelParams& p);

  double alpha() const { return alpha_; }
  double beta_A() const { return beta_A_; }
  double beta_B() const { return beta_B_; }

 private:
  double alpha_;
  double beta_A_;
  double beta_B_;
};

/// Product Gibbs state exp(-beta_k wL sz_k)/Z_k over k = A, B.
DensityOperator thermal_state(const ThermalSpec& spec, const ModelParams& p);

/// Sum of |rho_ij| over i != j.
double coherence_l1(const TwoQubitOperator& rho);
inline double coherence_l1(const DensityOperator& rho) { return coherence_l1(rho.matrix()); }

/// gamma = atan2(|h2|, |h1|) in [0, pi/2]; the controlled-u_gamma angle the
/// gate realizes up to conditional phases.
double gate_angle(const ModelParams& p, double t);

}  // namespace gatetherm
