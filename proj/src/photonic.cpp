#include "gatetherm/photonic.hpp"

#include <cmath>
#include <stdexcept>

namespace gatetherm::photonic {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void OpticalParams::validate() const {
  if (!in_unit_interval(T_H)) throw std::invalid_argument("photonic.T_H must lie in [0, 1]");
  if (!in_unit_interval(T_V)) throw std::invalid_argument("photonic.T_V must lie in [0, 1]");
  if (!in_unit_interval(atten_H)) throw std::invalid_argument("photonic.atten_H must lie in [0, 1]");
  if (!(accidental_eps >= 0.0 && accidental_eps < 1.0))
    throw std::invalid_argument("photonic.eps must lie in [0, 1)");
}

ModeTransform ppbs_transform(double T_H, double T_V) {
  if (!in_unit_interval(T_H) || !in_unit_interval(T_V))
    throw std::invalid_argument("ppbs_transform: transmittivities must lie in [0, 1]");
  ModeTransform m;
  for (Pol p : {Pol::kH, Pol::kV}) {
    const double T = p == Pol::kH ? T_H : T_V;
    const Complex t = std::sqrt(T);
    const Complex r(0.0, std::sqrt(1.0 - T));
    const std::size_t a = mode_index(Arm::kA, p);
    const std::size_t b = mode_index(Arm::kB, p);
    m(a, a) = t;
    m(b, a) = r;
    m(a, b) = r;
    m(b, b) = t;
  }
  return m;
}

Mat2 hwp_u(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 u;
  u(0, 0) = c;
  u(0, 1) = s;
  u(1, 0) = s;
  u(1, 1) = -c;
  return u;
}

ModeTransform arm_local(const Mat2& a_block, const Mat2& b_block) {
  ModeTransform m;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      m(r, c) = a_block(r, c);
      m(2 + r, 2 + c) = b_block(r, c);
    }
  return m;
}

ModeTransform compose_circuit(const OpticalParams& params, double gamma) {
  params.validate();
  const Mat2 u = hwp_u(gamma / 2.0);
  const ModeTransform hwp = arm_local(Mat2::identity(), u);
  const Mat2 eq = Mat2::diagonal({params.atten_H, 1.0});
  const ModeTransform equalizers = arm_local(eq, eq);
  // Equalizers sit right after the PPBS so they act on the polarization
  // basis in which the PPBS is diagonal.
  return hwp * equalizers * ppbs_transform(params.T_H, params.T_V) * hwp;
}

PostselectedGate postselect(const ModeTransform& M) {
  PostselectedGate g;
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q) {
      const std::size_t in = basis_index(static_cast<int>(p), static_cast<int>(q));
      const std::size_t a_in = mode_index(Arm::kA, static_cast<Pol>(p));
      const std::size_t b_in = mode_index(Arm::kB, static_cast<Pol>(q));
      for (std::size_t pp = 0; pp < 2; ++pp)
        for (std::size_t qq = 0; qq < 2; ++qq) {
          const std::size_t fin = basis_index(static_cast<int>(pp), static_cast<int>(qq));
          const std::size_t a_out = mode_index(Arm::kA, static_cast<Pol>(pp));
          const std::size_t b_out = mode_index(Arm::kB, static_cast<Pol>(qq));
          g.G(fin, in) = M(a_out, a_in) * M(b_out, b_in) + M(a_out, b_in) * M(b_out, a_in);
        }
      double s = 0.0;
      for (std::size_t fin = 0; fin < kOutcomes; ++fin) s += std::norm(g.G(fin, in));
      g.success[in] = s;
    }
  return g;
}

ConditionalMatrix photonic_conditional_matrix(const PostselectedGate& g, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("accidental eps must lie in [0, 1]");
  ConditionalMatrix c{};
  for (std::size_t in = 0; in < kOutcomes; ++in) {
    if (!(g.success[in] > 0.0))
      throw std::invalid_argument("post-selected gate blocks input " + OutcomeLabel::from_index(in).bits());
    for (std::size_t fin = 0; fin < kOutcomes; ++fin)
      c[fin][in] = (1.0 - eps) * std::norm(g.G(fin, in)) / g.success[in] + eps / 4.0;
  }
  return c;
}

ConditionalMatrix photonic_conditional_matrix(const OpticalParams& params, double gamma) {
  return photonic_conditional_matrix(postselect(compose_circuit(params, gamma)), params.accidental_eps);
}

}  // namespace gatetherm::photonic
