#pragma once

// Sweep orchestration and CSV/JSON emission behind the command-line tool.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <functional>
#include <atomic>
#include <thread>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gatetherm/config.hpp"
#include "gatetherm/model.hpp"
#include "gatetherm/photonic.hpp"
#include "gatetherm/sampler.hpp"
#include "gatetherm/tpm.hpp"

namespace gatetherm {

/// A computed quantity broke one of the numeric invariants (probability
/// range, normalization, fluctuation theorem, second law).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointResult {
  double wt = 0.0;  // omega_L * t
  ProbVector p_in{};
  ProbVector p_fin{};
  ConditionalMatrix conditional{};
  JointTable joint;
  EntropyRealizations sigma;
  DiscreteDistribution dE;
  DiscreteDistribution ds;
  std::vector<double> dE_moments;
  std::vector<double> ds_moments;
  double h2_sq = 0.0;
  double cl1 = 0.0;  // C_l1 of U(t)|10>
  ThermoReport thermo;
};

/// Everything the tables need at one time, built from an arbitrary
/// conditional matrix. `h2_sq` and `cl1` are left at zero.
PointResult evaluate_from_conditional(const ProbVector& p_in, const ConditionalMatrix& c,
                                      double beta, int moments_max, double wt);

/// Hamiltonian pipeline at dimensionless time wt.
PointResult evaluate_point(const RunConfig& cfg, double wt);

/// Post-selected photonic pipeline at dimensionless time wt; the gate angle
/// follows the Hamiltonian model, gamma(t) = atan2(|h2|, |h1|).
PointResult evaluate_photonic_point(const RunConfig& cfg, double wt);

/// Empirical pipeline: frequencies, empirical marginals and the entropy
/// realizations built from them.
PointResult evaluate_empirical(const EmpiricalTable& e, double beta, int moments_max, double wt);

/// Evaluates fn(i) for i in [0, n) across workers; results are ordered by i.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn, unsigned workers = 0) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(n));
  if (workers == 0) workers = default_worker_count();
  workers = std::max(1u, std::min(workers, static_cast<unsigned>(std::max(n, 1))));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (int i = next++; i < n && !failed; i = next++) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(fn(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<PointResult> evaluate_sweep(const RunConfig& cfg);

/// Index of the first interior strict-rise local maximum (v[i-1] < v[i] >=
/// v[i+1]); falls back to the global argmax when there is none. Unset
/// entries are skipped.
std::optional<std::size_t> first_local_max(const std::vector<std::optional<double>>& v);

/// Throws InvariantViolation. `unital` additionally checks the fluctuation
/// theorem and <dsigma> >= 0.
void check_invariants(const PointResult& r, bool unital);

/// Fixed scientific notation, 12 significant digits; -0 printed as 0.
std::string format_number(double x);

/// Column names for the 16 joint cells, "j_<in>_<fin>".
std::vector<std::string> joint_column_names(const std::string& prefix = "j_");

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

Table sweep_table(const std::vector<PointResult>& pts, int moments_max);
Table realizations_table(const std::vector<PointResult>& pts);
nlohmann::json sweep_summary(const RunConfig& cfg, const std::vector<PointResult>& pts);

Table histogram_table(const std::vector<PointResult>& pts, bool energy);

/// Monte Carlo error table against the exact pipeline; one row per grid time.
Table mc_error_table(const RunConfig& cfg, const std::vector<PointResult>& exact);

/// |ideal - photonic| conditional entries and dE moments per grid time.
Table photonic_error_table(const RunConfig& cfg, const std::vector<PointResult>& exact);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Writes sweep.csv, realizations.csv and summary.json.
void run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir);
/// Writes hist_dE.csv and hist_ds.csv for cfg.hist_times.
void run_hist(const RunConfig& cfg, const std::filesystem::path& out_dir);
/// Writes mc_error.csv and, when cfg.photonic.enabled, photonic_error.csv.
void run_compare(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace gatetherm
