#pragma once

// Two-point measurement (TPM) statistics under local energy measurements.
//
// Outcomes are bit pairs (psi_A, phi_B) with flat index 2*psi_A + phi_B.
// Energy labels are dimensionless: eps(0) = -1, eps(1) = +1 per qubit, so a
// pair carries E in {-2, 0, +2}. The two E = 0 outcomes stay distinct until a
// distribution is built.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gatetherm/linalg.hpp"
#include "gatetherm/model.hpp"

namespace gatetherm {

struct OutcomeLabel {
  int psi_A = 0;
  int phi_B = 0;

  static OutcomeLabel from_index(std::size_t i);
  std::size_t index() const { return basis_index(psi_A, phi_B); }
  int energy() const { return (2 * psi_A - 1) + (2 * phi_B - 1); }
  /// "00", "01", "10" or "11".
  std::string bits() const;
};

inline constexpr std::size_t kOutcomes = 4;

using ProbVector = std::array<double, kOutcomes>;

/// c[fin][in] = p(fin | in). Columns sum to one for any trace-preserving map.
using ConditionalMatrix = std::array<std::array<double, kOutcomes>, kOutcomes>;

/// j[in][fin] = p(in, fin).
struct JointTable {
  std::array<std::array<double, kOutcomes>, kOutcomes> j{};

  double operator()(std::size_t in, std::size_t fin) const { return j[in][fin]; }
  double total() const;
};

class DiscreteDistribution {
 public:
  struct Atom {
    double value;
    double prob;
  };

  /// Adds prob to the atom whose value is within merge_tol of value, or
  /// inserts a new atom. Atoms are kept sorted by value.
  void add(double value, double prob, double merge_tol = 1e-12);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total() const;
  double mean() const;
  /// Probability of the atom at value (0 if absent).
  double prob_at(double value, double tol = 1e-12) const;

 private:
  std::vector<Atom> atoms_;
};

/// sigma[in][fin]; nullopt where p_in(in) == 0 or p_fin(fin) == 0.
struct EntropyRealizations {
  std::array<std::array<std::optional<double>, kOutcomes>, kOutcomes> sigma{};
};

std::array<TwoQubitOperator, kOutcomes> projectors();

ProbVector initial_probs(const DensityOperator& rho0);

/// |<fin|U|in>|^2. Throws std::invalid_argument if U is not unitary.
ConditionalMatrix conditional_matrix(const TwoQubitOperator& U);
/// Closed form from the trajectory coefficients: the 00 and 01 columns are
/// exact unit vectors, the {10,11} block is |h1|^2, |h2|^2.
ConditionalMatrix conditional_matrix(const Propagator& P);

JointTable joint_table(const ProbVector& p_in, const ConditionalMatrix& c);
JointTable joint_table(const DensityOperator& rho0, const Propagator& P);

ProbVector final_probs(const JointTable& j);
/// Row sums of the joint table.
ProbVector initial_marginal(const JointTable& j);

DiscreteDistribution delta_e_distribution(const JointTable& j);

EntropyRealizations entropy_realizations(const ProbVector& p_in, const ProbVector& p_fin);

/// Throws std::logic_error if a realization marked undefined carries weight.
DiscreteDistribution entropy_distribution(const JointTable& j, const EntropyRealizations& s);

/// Raw moments sum p * value^h for h = 1..h_max. Throws if h_max < 1.
std::vector<double> moments(const DiscreteDistribution& d, int h_max = 5);

struct ThermoReport {
  double dE_mean = 0.0;
  double ds_mean = 0.0;
  double ift = 0.0;            // <exp(-dsigma)>
  double landauer_lhs = 0.0;   // beta <dE>
  double landauer_slack = 0.0; // beta <dE> - <dsigma>
  std::optional<double> ratio; // <dE>/<dsigma>, unset when |<dsigma>| <= 1e-9
};

inline constexpr double kRatioGuard = 1e-9;

/// Throws std::invalid_argument if beta <= 0.
ThermoReport thermo_report(const JointTable& j, const EntropyRealizations& s, double beta);

}  // namespace gatetherm
