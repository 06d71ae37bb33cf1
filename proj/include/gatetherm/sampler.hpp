#pragma once

// Seeded Monte Carlo emulation of the two-point measurement experiment.
//
// Shots are split into fixed-size chunks; chunk k draws from its own
// mt19937_64 stream seeded by mixing (seed, k). Counts are merged by
// summation, so the table depends only on (seed, n, inputs) and never on the
// number of workers.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gatetherm/model.hpp"
#include "gatetherm/tpm.hpp"

namespace gatetherm {

struct SampleConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 42;
  /// 0 picks from GATETHERM_WORKERS, then hardware concurrency.
  unsigned workers = 0;
};

struct EmpiricalTable {
  std::array<std::array<std::uint64_t, kOutcomes>, kOutcomes> counts{};
  std::uint64_t n = 0;

  /// counts / n as a joint table. Throws std::invalid_argument when n == 0.
  JointTable frequencies() const;
};

inline constexpr std::uint64_t kShotsPerChunk = 1u << 16;

/// Stream seed for chunk `index` of a run seeded with `seed`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

/// Number of workers from GATETHERM_WORKERS, else hardware concurrency.
unsigned default_worker_count();

/// Two-stage shot: draw (psi_A, phi_B) from the populations of rho0, evolve
/// that basis ket with U, then draw the final pair from |<fin|U|in>|^2.
EmpiricalTable sample_tpm(const DensityOperator& rho0, const TwoQubitOperator& U,
                          const SampleConfig& cfg);

/// Same two-stage procedure driven by a precomputed initial vector and
/// conditional matrix (used for the photonic model, which is not unitary).
EmpiricalTable sample_tpm(const ProbVector& p_in, const ConditionalMatrix& c,
                          const SampleConfig& cfg);

/// Draws (in, fin) pairs directly from the 16-cell joint table.
EmpiricalTable sample_joint(const JointTable& j, const SampleConfig& cfg);

struct TableDistance {
  double tv = 0.0;        // (1/2) sum |counts/n - j|
  double max_cell = 0.0;  // max |counts/n - j|
};

/// Throws std::invalid_argument when e.n == 0.
TableDistance tv_distance(const EmpiricalTable& e, const JointTable& j);

/// Pearson chi-square of counts against n * j over cells with j > 0, and
/// the number of such cells. Counts in cells with j == 0 make the statistic
/// infinite.
struct ChiSquare {
  double statistic = 0.0;
  int cells = 0;
};
ChiSquare chi_square(const EmpiricalTable& e, const JointTable& j);

/// A set of named curves sampled on a common time grid.
struct Curves {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;  // rows[t][quantity]
};

/// |theory - estimate| per time and per quantity. Throws std::invalid_argument
/// when the time grids or the column sets differ.
Curves error_report(const Curves& theory, const Curves& estimate);

}  // namespace gatetherm
