#include "gatetherm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace gatetherm {

ModelParams::ModelParams(double omega_L, double omega_int)
    : omega_L_(omega_L), omega_int_(omega_int) {
  if (!(omega_L > 0.0) || !std::isfinite(omega_L))
    throw std::invalid_argument("omega_L must be finite and > 0");
  if (!(omega_int >= 0.0) || !std::isfinite(omega_int))
    throw std::invalid_argument("omega_int must be finite and >= 0");
  delta_ = std::sqrt(omega_L * omega_L + omega_int * omega_int) / 2.0;
}

Hamiltonians hamiltonians(const ModelParams& p) {
  using namespace pauli;
  Hamiltonians h;
  h.local = (tensor(z(), identity()) + tensor(identity(), z())) * Complex(p.omega_L() / 2.0);
  h.interaction = tensor(projector(1), x()) * Complex(p.omega_int() / 2.0);
  h.total = h.local + h.interaction;
  return h;
}

TrajectoryCoeffs h_coeffs(const ModelParams& p, double t) {
  const double d = p.delta();
  const double c = std::cos(d * t);
  const double s = std::sin(d * t);
  return {Complex(c, p.omega_L() / (2.0 * d) * s), Complex(0.0, -p.omega_int() / (2.0 * d) * s)};
}

Propagator propagator_analytic(const ModelParams& p, double t) {
  const auto [h1, h2] = h_coeffs(p, t);
  const double wl = p.omega_L();
  const Complex half = std::polar(1.0, -wl * t / 2.0);

  Propagator out{t, h1, h2, {}};
  TwoQubitOperator& U = out.U;
  U(0, 0) = std::polar(1.0, wl * t);
  U(1, 1) = 1.0;
  // Columns are images of the basis kets.
  U(2, 2) = half * h1;
  U(3, 2) = half * h2;
  U(2, 3) = half * h2;
  U(3, 3) = half * std::conj(h1);
  return out;
}

Mat2 RotationDecomposition::rotation() const {
  using namespace pauli;
  const Mat2 n_sigma = x() * Complex(axis[0]) + y() * Complex(axis[1]) + z() * Complex(axis[2]);
  return identity() * Complex(std::cos(phi)) - n_sigma * Complex(0.0, std::sin(phi));
}

RotationDecomposition rotation_decomposition(const ModelParams& p, double t) {
  if (p.omega_int() == 0.0)
    throw std::domain_error("rotation axis is undefined for omega_int == 0");
  RotationDecomposition r;
  r.zeta = std::acos(p.omega_L() / (2.0 * p.delta()));
  r.phi = p.delta() * t;
  r.axis = {std::sin(r.zeta), 0.0, std::cos(r.zeta)};
  return r;
}

ThermalSpec::ThermalSpec(double alpha, double beta_B, const ModelParams& p)
    : alpha_(alpha), beta_B_(beta_B) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!std::isfinite(beta_B)) throw std::invalid_argument("beta_B must be finite");
  beta_A_ = std::log(alpha / (1.0 - alpha)) / (2.0 * p.omega_L());
}

namespace {

// exp(-beta wL sz)/Z with sz = diag(-1, +1).
std::array<double, 2> gibbs_populations(double beta, double omega_L) {
  const double x = beta * omega_L;
  // p(1) = e^{-x} / (e^{x} + e^{-x}) = 1 / (1 + e^{2x})
  const double p1 = 1.0 / (1.0 + std::exp(2.0 * x));
  return {1.0 - p1, p1};
}

}  // namespace

DensityOperator thermal_state(const ThermalSpec& spec, const ModelParams& p) {
  const auto pa = gibbs_populations(spec.beta_A(), p.omega_L());
  const auto pb = gibbs_populations(spec.beta_B(), p.omega_L());
  const Mat2 ra = Mat2::diagonal({pa[0], pa[1]});
  const Mat2 rb = Mat2::diagonal({pb[0], pb[1]});
  return validate_density(tensor(ra, rb));
}

double coherence_l1(const TwoQubitOperator& rho) {
  double c = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) c += std::abs(rho(i, j));
  return c;
}

double gate_angle(const ModelParams& p, double t) {
  const auto [h1, h2] = h_coeffs(p, t);
  return std::atan2(std::abs(h2), std::abs(h1));
}

}  // namespace gatetherm
