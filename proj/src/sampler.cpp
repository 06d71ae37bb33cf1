#include "gatetherm/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace gatetherm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <std::size_t N>
struct Cdf {
  std::array<double, N> c{};

  explicit Cdf(const std::array<double, N>& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      s += std::max(p[i], 0.0);
      c[i] = s;
    }
    for (auto& x : c) x /= s;
    // Last non-empty bin absorbs round-off.
    for (std::size_t i = N; i-- > 0;) {
      if (p[i] > 0.0) {
        for (std::size_t k = i; k < N; ++k) c[k] = 1.0;
        break;
      }
    }
  }

  std::size_t draw(double u) const {
    for (std::size_t i = 0; i < N; ++i)
      if (u < c[i]) return i;
    return N - 1;
  }
};

// Runs `chunk(k, counts)` for every chunk k and sums the partial tables.
template <typename ChunkFn>
EmpiricalTable run_chunks(std::uint64_t n_samples, unsigned workers, ChunkFn chunk) {
  const std::uint64_t n_chunks = (n_samples + kShotsPerChunk - 1) / kShotsPerChunk;
  if (workers == 0) workers = default_worker_count();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(n_chunks, 1)));

  std::vector<EmpiricalTable> partial(workers);
  std::atomic<std::uint64_t> next{0};
  auto body = [&](unsigned w) {
    for (std::uint64_t k = next++; k < n_chunks; k = next++) {
      const std::uint64_t begin = k * kShotsPerChunk;
      const std::uint64_t shots = std::min(kShotsPerChunk, n_samples - begin);
      chunk(k, shots, partial[w]);
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
  }

  EmpiricalTable total;
  for (const auto& p : partial)
    for (std::size_t a = 0; a < kOutcomes; ++a)
      for (std::size_t b = 0; b < kOutcomes; ++b) total.counts[a][b] += p.counts[a][b];
  total.n = n_samples;
  return total;
}

}  // namespace

JointTable EmpiricalTable::frequencies() const {
  if (n == 0) throw std::invalid_argument("empirical table is empty");
  JointTable t;
  for (std::size_t a = 0; a < kOutcomes; ++a)
    for (std::size_t b = 0; b < kOutcomes; ++b)
      t.j[a][b] = static_cast<double>(counts[a][b]) / static_cast<double>(n);
  return t;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("GATETHERM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EmpiricalTable sample_tpm(const ProbVector& p_in, const ConditionalMatrix& c, const SampleConfig& cfg) {
  const Cdf<kOutcomes> prepare(p_in);
  std::array<Cdf<kOutcomes>, kOutcomes> measure{Cdf<kOutcomes>(ProbVector{1, 0, 0, 0}),
                                                Cdf<kOutcomes>(ProbVector{0, 1, 0, 0}),
                                                Cdf<kOutcomes>(ProbVector{0, 0, 1, 0}),
                                                Cdf<kOutcomes>(ProbVector{0, 0, 0, 1})};
  for (std::size_t in = 0; in < kOutcomes; ++in) {
    ProbVector col{};
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) col[fin] = c[fin][in];
    if (p_in[in] > 0.0) measure[in] = Cdf<kOutcomes>(col);
  }

  return run_chunks(cfg.n_samples, cfg.workers,
                    [&](std::uint64_t k, std::uint64_t shots, EmpiricalTable& out) {
                      std::mt19937_64 rng(derive_stream_seed(cfg.seed, k));
                      for (std::uint64_t s = 0; s < shots; ++s) {
                        const std::size_t in = prepare.draw(uniform01(rng));
                        const std::size_t fin = measure[in].draw(uniform01(rng));
                        ++out.counts[in][fin];
                      }
                    });
}

EmpiricalTable sample_tpm(const DensityOperator& rho0, const TwoQubitOperator& U, const SampleConfig& cfg) {
  // The first projective measurement leaves the basis ket |in>; U|in> is
  // column `in` of U, and the second measurement sees |<fin|U|in>|^2.
  if (!is_unitary(U)) throw std::invalid_argument("sample_tpm: U is not unitary");
  ProbVector p_in{};
  for (std::size_t i = 0; i < kOutcomes; ++i) p_in[i] = rho0.population(i);
  ConditionalMatrix c{};
  for (std::size_t in = 0; in < kOutcomes; ++in) {
    const TwoQubitState evolved = U * basis_state(in);
    for (std::size_t fin = 0; fin < kOutcomes; ++fin) c[fin][in] = std::norm(evolved[fin]);
  }
  return sample_tpm(p_in, c, cfg);
}

EmpiricalTable sample_joint(const JointTable& j, const SampleConfig& cfg) {
  std::array<double, kOutcomes * kOutcomes> flat{};
  for (std::size_t a = 0; a < kOutcomes; ++a)
    for (std::size_t b = 0; b < kOutcomes; ++b) flat[a * kOutcomes + b] = j.j[a][b];
  const Cdf<kOutcomes * kOutcomes> cdf(flat);
  return run_chunks(cfg.n_samples, cfg.workers,
                    [&](std::uint64_t k, std::uint64_t shots, EmpiricalTable& out) {
                      std::mt19937_64 rng(derive_stream_seed(cfg.seed, k));
                      for (std::uint64_t s = 0; s < shots; ++s) {
                        const std::size_t cell = cdf.draw(uniform01(rng));
                        ++out.counts[cell / kOutcomes][cell % kOutcomes];
                      }
                    });
}

TableDistance tv_distance(const EmpiricalTable& e, const JointTable& j) {
  const JointTable f = e.frequencies();
  TableDistance d;
  for (std::size_t a = 0; a < kOutcomes; ++a)
    for (std::size_t b = 0; b < kOutcomes; ++b) {
      const double diff = std::abs(f.j[a][b] - j.j[a][b]);
      d.tv += diff;
      d.max_cell = std::max(d.max_cell, diff);
    }
  d.tv *= 0.5;
  return d;
}

ChiSquare chi_square(const EmpiricalTable& e, const JointTable& j) {
  ChiSquare out;
  const double n = static_cast<double>(e.n);
  for (std::size_t a = 0; a < kOutcomes; ++a)
    for (std::size_t b = 0; b < kOutcomes; ++b) {
      const double expected = n * j.j[a][b];
      const double observed = static_cast<double>(e.counts[a][b]);
      if (expected > 0.0) {
        out.statistic += (observed - expected) * (observed - expected) / expected;
        ++out.cells;
      } else if (observed > 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
      }
    }
  return out;
}

Curves error_report(const Curves& theory, const Curves& estimate) {
  if (theory.times.size() != estimate.times.size())
    throw std::invalid_argument("error_report: time grids have different lengths");
  if (theory.names != estimate.names)
    throw std::invalid_argument("error_report: quantity columns differ");
  if (theory.rows.size() != theory.times.size() || estimate.rows.size() != estimate.times.size())
    throw std::invalid_argument("error_report: row count does not match the time grid");

  Curves out;
  out.times = theory.times;
  out.names = theory.names;
  out.rows.reserve(theory.rows.size());
  for (std::size_t t = 0; t < theory.times.size(); ++t) {
    if (std::abs(theory.times[t] - estimate.times[t]) > 1e-12)
      throw std::invalid_argument("error_report: time grids are not aligned");
    const auto& a = theory.rows[t];
    const auto& b = estimate.rows[t];
    if (a.size() != theory.names.size() || b.size() != theory.names.size())
      throw std::invalid_argument("error_report: row width does not match the columns");
    std::vector<double> row(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) row[q] = std::abs(a[q] - b[q]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace gatetherm
