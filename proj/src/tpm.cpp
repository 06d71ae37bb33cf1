#include "gatetherm/tpm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gatetherm {

OutcomeLabel OutcomeLabel::from_index(std::size_t i) {
  if (i >= kOutcomes) throw std::out_of_range("outcome index must be < 4");
  return {static_cast<int>(i / 2), static_cast<int>(i % 2)};
}

std::string OutcomeLabel::bits() const {
  return std::string{static_cast<char>('0' + psi_A), static_cast<char>('0' + phi_B)};
}

double JointTable::total() const {
  double s = 0.0;
  for (const auto& row : j)
    for (double x : row) s += x;
  return s;
}

void DiscreteDistribution::add(double value, double prob, double merge_tol) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), value - merge_tol,
                             [](const Atom& a, double v) { return a.value < v; });
  if (it != atoms_.end() && std::abs(it->value - value) <= merge_tol) {
    it->prob += prob;
    return;
  }
  atoms_.insert(it, Atom{value, prob});
}

double DiscreteDistribution::total() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.prob;
  return s;
}

double DiscreteDistribution::mean() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.prob * a.value;
  return s;
}

double DiscreteDistribution::prob_at(double value, double tol) const {
  for (const auto& a : atoms_)
    if (std::abs(a.value - value) <= tol) return a.prob;
  return 0.0;
}

std::array<TwoQubitOperator, kOutcomes> projectors() {
  std::array<TwoQubitOperator, kOutcomes> out;
  for (std::size_t i = 0; i < kOutcomes; ++i) {
    const auto o = OutcomeLabel::from_index(i);
    out[i] = tensor(pauli::projector(o.psi_A), pauli::projector(o.phi_B));
  }
  return out;
}

ProbVector initial_probs(const DensityOperator& rho0) {
  const auto proj = projectors();
  ProbVector p{};
  for (std::size_t n = 0; n < kOutcomes; ++n) p[n] = (rho0.matrix() * proj[n]).trace().real();
  return p;
}

ConditionalMatrix conditional_matrix(const TwoQubitOperator& U) {
  if (!is_unitary(U)) throw std::invalid_argument("conditional_matrix: U is not unitary");
  ConditionalMatrix c{};
  for (std::size_t fin = 0; fin < kOutcomes; ++fin)
    for (std::size_t in = 0; in < kOutcomes; ++in) c[fin][in] = std::norm(U(fin, in));
  return c;
}

ConditionalMatrix conditional_matrix(const Propagator& P) {
  ConditionalMatrix c{};
  c[0][0] = 1.0;
  c[1][1] = 1.0;
  c[2][2] = c[3][3] = std::norm(P.h1);
  c[2][3] = c[3][2] = std::norm(P.h2);
  return c;
}

JointTable joint_table(const ProbVector& p_in, const ConditionalMatrix& c) {
  JointTable t;
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) t.j[in][fin] = c[fin][in] * p_in[in];
  return t;
}

JointTable joint_table(const DensityOperator& rho0, const Propagator& P) {
  return joint_table(initial_probs(rho0), conditional_matrix(P));
}

ProbVector final_probs(const JointTable& j) {
  ProbVector p{};
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) p[fin] += j.j[in][fin];
  return p;
}

ProbVector initial_marginal(const JointTable& j) {
  ProbVector p{};
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) p[in] += j.j[in][fin];
  return p;
}

DiscreteDistribution delta_e_distribution(const JointTable& j) {
  DiscreteDistribution d;
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) {
      if (j.j[in][fin] == 0.0) continue;
      const int de = OutcomeLabel::from_index(fin).energy() - OutcomeLabel::from_index(in).energy();
      d.add(static_cast<double>(de), j.j[in][fin]);
    }
  if (d.atoms().empty()) d.add(0.0, 0.0);
  return d;
}

EntropyRealizations entropy_realizations(const ProbVector& p_in, const ProbVector& p_fin) {
  EntropyRealizations s;
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin)
      if (p_in[in] > 0.0 && p_fin[fin] > 0.0)
        s.sigma[in][fin] = std::log(p_in[in]) - std::log(p_fin[fin]);
  return s;
}

DiscreteDistribution entropy_distribution(const JointTable& j, const EntropyRealizations& s) {
  DiscreteDistribution d;
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) {
      const double w = j.j[in][fin];
      if (w == 0.0) continue;
      if (!s.sigma[in][fin])
        throw std::logic_error("undefined entropy realization carries nonzero joint weight");
      d.add(*s.sigma[in][fin], w);
    }
  if (d.atoms().empty()) d.add(0.0, 0.0);
  return d;
}

std::vector<double> moments(const DiscreteDistribution& d, int h_max) {
  if (h_max < 1) throw std::invalid_argument("moments: h_max must be >= 1");
  std::vector<double> m(static_cast<std::size_t>(h_max), 0.0);
  for (const auto& a : d.atoms()) {
    double pw = 1.0;
    for (int h = 0; h < h_max; ++h) {
      pw *= a.value;
      m[static_cast<std::size_t>(h)] += a.prob * pw;
    }
  }
  return m;
}

ThermoReport thermo_report(const JointTable& j, const EntropyRealizations& s, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("thermo_report: beta must be > 0");
  ThermoReport r;
  r.dE_mean = delta_e_distribution(j).mean();
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) {
      const double w = j.j[in][fin];
      if (w == 0.0) continue;
      if (!s.sigma[in][fin])
        throw std::logic_error("undefined entropy realization carries nonzero joint weight");
      r.ds_mean += w * *s.sigma[in][fin];
      r.ift += w * std::exp(-*s.sigma[in][fin]);
    }
  r.landauer_lhs = beta * r.dE_mean;
  r.landauer_slack = r.landauer_lhs - r.ds_mean;
  if (std::abs(r.ds_mean) > kRatioGuard) r.ratio = r.dE_mean / r.ds_mean;
  return r;
}

}  // namespace gatetherm
