#pragma once

// Linear-optical model of the post-selected controlled-u gate.
//
// Modes are ordered ((a,H), (a,V), (b,H), (b,V)); photon a carries qubit A
// (control), photon b carries qubit B (target), |0> = H, |1> = V. Beam
// splitters take i on reflection. Inside this module sigma_z is the optical
// diag(+1, -1) on (H, V).

#include <array>

#include "gatetherm/linalg.hpp"
#include "gatetherm/tpm.hpp"

namespace gatetherm::photonic {

enum class Arm { kA = 0, kB = 1 };
enum class Pol { kH = 0, kV = 1 };

inline constexpr std::size_t mode_index(Arm arm, Pol pol) {
  return 2 * static_cast<std::size_t>(arm) + static_cast<std::size_t>(pol);
}

struct OpticalParams {
  double T_H = 1.0;
  double T_V = 1.0 / 3.0;
  /// Amplitude factor applied to H on each arm by the loss equalizers.
  double atten_H = 0.57735026918962576;  // 1/sqrt(3)
  /// Uniform accidental-coincidence background.
  double accidental_eps = 0.0;

  /// Throws std::invalid_argument for out-of-range fields.
  void validate() const;
};

/// M[out][in] over the four modes.
using ModeTransform = SquareMatrix<4>;

/// Partially polarizing beam splitter coupling arms a and b per polarization:
/// a_p -> sqrt(T_p) a_p + i sqrt(1-T_p) b_p, b_p -> i sqrt(1-T_p) a_p + sqrt(T_p) b_p.
ModeTransform ppbs_transform(double T_H, double T_V);

/// u_theta = [[cos, sin], [sin, -cos]] on (H, V). u_theta^2 = 1 and
/// u_theta sz u_theta = u_{2 theta}.
Mat2 hwp_u(double theta);

/// A half-wave plate at physical angle `plate` realizes u_{2 plate}.
inline Mat2 hwp_from_plate_angle(double plate) { return hwp_u(2.0 * plate); }

/// Plate angle for the two HWPs that turn the control-sz core into
/// controlled-u_gamma: each plate implements u_{gamma/2}.
inline double plate_angle_for_gate(double gamma) { return gamma / 4.0; }

/// Block-diagonal transform applying `a_block` to arm a and `b_block` to arm b.
ModeTransform arm_local(const Mat2& a_block, const Mat2& b_block);

/// HWP(u_{gamma/2}, arm b) . equalizers . PPBS . HWP(u_{gamma/2}, arm b).
ModeTransform compose_circuit(const OpticalParams& params, double gamma);

struct PostselectedGate {
  TwoQubitOperator G;                // coincidence amplitudes G[fin][in]
  std::array<double, kOutcomes> success{};
};

/// Coincidence amplitude for one photon per output arm: the permanent of the
/// 2x2 submatrix of M selected by the input and output modes.
PostselectedGate postselect(const ModeTransform& M);

/// c[fin][in] = (1 - eps)|G[fin][in]|^2 / success[in] + eps/4.
/// Throws std::invalid_argument if an input is blocked or eps is out of range.
ConditionalMatrix photonic_conditional_matrix(const PostselectedGate& g, double eps);

/// Convenience: compose, post-select and condition for gate angle gamma.
ConditionalMatrix photonic_conditional_matrix(const OpticalParams& params, double gamma);

}  // namespace gatetherm::photonic
