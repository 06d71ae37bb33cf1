#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gatetherm/config.hpp"
#include "gatetherm/pipeline.hpp"

using namespace gatetherm;
namespace fs = std::filesystem;

namespace {

const double kPeak = std::numbers::pi / std::sqrt(26.0);

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gatetherm_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GATETHERM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig c;
  EXPECT_EQ(c.omega_L, 1.0);
  EXPECT_EQ(c.omega_int, 5.0);
  EXPECT_EQ(c.alpha, 0.2);
  EXPECT_EQ(c.beta_B, 0.5);
  EXPECT_NEAR(c.t_max, 3.0 * kPeak, 1e-15);
  EXPECT_EQ(c.n_points, 200);
  EXPECT_EQ(c.samples, 1'000'000u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_DOUBLE_EQ(c.photonic.atten_H, 1.0 / std::sqrt(3.0));
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesKeysAndComments) {
  const auto c = parse_config(
      "# run\n"
      "omega_int = 3.5\n"
      "  n_points=11   # inline\n"
      "hist_times = 0.1, 0.2 ,0.3\n"
      "photonic.enabled = true\n"
      "photonic.T_H = 0.985\n"
      "seed = 7\n");
  EXPECT_EQ(c.omega_int, 3.5);
  EXPECT_EQ(c.n_points, 11);
  EXPECT_EQ(c.hist_times, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_TRUE(c.photonic.enabled);
  EXPECT_EQ(c.photonic.T_H, 0.985);
  EXPECT_EQ(c.seed, 7u);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("omega_X = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("photonic.T_X = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("alpha 0.3\n"), ConfigError);
  EXPECT_THROW(parse_config("alpha = abc\n"), ConfigError);
  EXPECT_THROW(parse_config("n_points = 2.5\n"), ConfigError);
  EXPECT_THROW(parse_config("photonic.enabled = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config("t_min = 1\nt_max = 0.5\n").validate(), ConfigError);
  EXPECT_THROW(parse_config("n_points = 1\n").validate(), ConfigError);
  EXPECT_THROW(parse_config("alpha = 1\n").validate(), ConfigError);
  EXPECT_THROW(parse_config("hist_times = 5\n").validate(), ConfigError);
  EXPECT_THROW(parse_config("photonic.eps = 1\n").validate(), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/gatetherm.conf"), ConfigError);
  try {
    parse_config("alpha = 0\n").validate();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
}

TEST(Config, GridEndpoints) {
  RunConfig c;
  EXPECT_EQ(c.grid_time(0), c.t_min);
  EXPECT_EQ(c.grid_time(c.n_points - 1), c.t_max);
}

TEST(FormatNumber, FixedScientific) {
  EXPECT_EQ(format_number(0.0), "0.00000000000e+00");
  EXPECT_EQ(format_number(-0.0), "0.00000000000e+00");
  EXPECT_EQ(format_number(1.0), "1.00000000000e+00");
  EXPECT_EQ(format_number(-0.0625), "-6.25000000000e-02");
  EXPECT_EQ(format_number(123456.789), "1.23456789000e+05");
}

TEST(FirstLocalMax, PicksFirstPeak) {
  using V = std::vector<std::optional<double>>;
  EXPECT_EQ(first_local_max(V{0.0, 1.0, 0.5, 2.0, 0.0}), 1u);
  EXPECT_EQ(first_local_max(V{0.0, 1.0, 2.0}), 2u);
  EXPECT_EQ(first_local_max(V{std::nullopt, 1.0, 2.0, 1.0}), 2u);
  EXPECT_FALSE(first_local_max(V{std::nullopt}));
}

TEST(ParallelMap, OrderedAndPropagatesErrors) {
  const auto v = parallel_map<int>(100, [](int i) { return i * i; }, 8);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(v[static_cast<std::size_t>(i)], i * i);
  EXPECT_THROW(parallel_map<int>(10, [](int i) -> int {
                 if (i == 7) throw std::runtime_error("boom");
                 return i;
               }, 4),
               std::runtime_error);
}

TEST(Sweep, TwoPointGridStartsAtTrivialRow) {
  RunConfig c;
  c.n_points = 2;
  const auto pts = evaluate_sweep(c);
  ASSERT_EQ(pts.size(), 2u);
  const auto& first = pts[0];
  EXPECT_EQ(first.wt, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      if (i != k) EXPECT_EQ(first.joint.j[i][k], 0.0);
  for (double m : first.dE_moments) EXPECT_EQ(m, 0.0);
  for (double m : first.ds_moments) EXPECT_EQ(m, 0.0);
  EXPECT_EQ(first.cl1, 0.0);
  EXPECT_FALSE(first.thermo.ratio);
  const auto table = sweep_table(pts, c.moments_max);
  EXPECT_EQ(table.rows[0].back(), "");
}

TEST(Sweep, SummaryPeakAndInvariants) {
  const RunConfig c;
  const auto pts = evaluate_sweep(c);
  for (const auto& p : pts) EXPECT_NO_THROW(check_invariants(p, true));
  const auto s = sweep_summary(c, pts);
  const double step = s["grid_step"].get<double>();
  EXPECT_LE(std::abs(s["peaks"]["dE_mean"]["wt"].get<double>() - kPeak), step);
  EXPECT_LE(std::abs(s["peaks"]["h2_sq"]["wt"].get<double>() - kPeak), step);
  EXPECT_LE(s["ift_max_deviation"].get<double>(), 1e-10);
  EXPECT_GE(s["landauer_min_slack"].get<double>(), -1e-12);
}

TEST(Sweep, CsvShapeAndProbabilityRanges) {
  const fs::path out = scratch("sweep");
  RunConfig c;
  c.n_points = 25;
  run_sweep(c, out);
  const auto rows = parse_csv(slurp(out / "sweep.csv"));
  ASSERT_EQ(rows.size(), 26u);
  const auto& header = rows[0];
  ASSERT_EQ(header.size(), 1u + 16u + 5u + 5u + 5u);
  EXPECT_EQ(header[1], "j_00_00");
  EXPECT_EQ(header[16], "j_11_11");
  EXPECT_EQ(header.back(), "ratio");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    ASSERT_EQ(rows[r].size(), header.size());
    double sum = 0.0;
    for (std::size_t k = 1; k <= 16; ++k) {
      const double p = std::stod(rows[r][k]);
      EXPECT_GE(p, -1e-12);
      EXPECT_LE(p, 1.0 + 1e-12);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-10);
    const std::size_t ift_col = 1 + 16 + 10 + 1;
    EXPECT_EQ(header[ift_col], "ift");
    EXPECT_NEAR(std::stod(rows[r][ift_col]), 1.0, 1e-10);
  }
  const auto real = parse_csv(slurp(out / "realizations.csv"));
  ASSERT_EQ(real[0].size(), 17u);
  EXPECT_EQ(real[0][1], "ds_00_00");
  EXPECT_TRUE(fs::exists(out / "summary.json"));
}

TEST(Sweep, ByteIdenticalReruns) {
  const fs::path a = scratch("rerun_a");
  const fs::path b = scratch("rerun_b");
  RunConfig c;
  c.n_points = 40;
  c.samples = 20'000;
  run_sweep(c, a);
  run_sweep(c, b);
  run_compare(c, a);
  run_compare(c, b);
  for (const char* f : {"sweep.csv", "realizations.csv", "summary.json", "mc_error.csv"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Hist, ZeroTimeAndPeakRows) {
  const fs::path out = scratch("hist");
  RunConfig c;
  c.hist_times = {0.0, 0.62};
  run_hist(c, out);
  const auto dE = parse_csv(slurp(out / "hist_dE.csv"));
  const auto ds = parse_csv(slurp(out / "hist_ds.csv"));
  EXPECT_EQ(dE[0], (std::vector<std::string>{"wt", "value", "probability"}));
  // t = 0: one atom at 0 with probability 1 in both files.
  EXPECT_EQ(std::stod(dE[1][0]), 0.0);
  EXPECT_EQ(std::stod(dE[1][1]), 0.0);
  EXPECT_NEAR(std::stod(dE[1][2]), 1.0, 1e-15);
  EXPECT_EQ(std::stod(ds[1][0]), 0.0);
  EXPECT_NEAR(std::stod(ds[1][2]), 1.0, 1e-15);
  EXPECT_NE(std::stod(dE[2][0]), 0.0);

  ASSERT_EQ(dE.size(), 5u);  // header + 1 + 3 atoms
  EXPECT_NEAR(std::stod(dE[2][1]), -2.0, 0.0);
  EXPECT_NEAR(std::stod(dE[2][2]), 0.2069, 5e-4);
  EXPECT_NEAR(std::stod(dE[3][2]), 0.2308, 5e-4);
  EXPECT_NEAR(std::stod(dE[4][2]), 0.5624, 5e-4);

  double mean = 0.0;
  for (std::size_t r = 2; r < ds.size(); ++r) mean += std::stod(ds[r][1]) * std::stod(ds[r][2]);
  EXPECT_LE(std::abs(mean), 0.02);
}

TEST(Compare, IdenticalPipelinesGiveZeroErrors) {
  const RunConfig c;
  std::vector<PointResult> pts{evaluate_point(c, 0.3), evaluate_point(c, kPeak)};
  Curves a;
  a.names = joint_column_names();
  for (const auto& p : pts) {
    a.times.push_back(p.wt);
    std::vector<double> row;
    for (const auto& r : p.joint.j)
      for (double x : r) row.push_back(x);
    a.rows.push_back(row);
  }
  for (const auto& row : error_report(a, a).rows)
    for (double v : row) EXPECT_EQ(v, 0.0);

  // Ideal optics compared to the Hamiltonian pipeline: zero up to round-off.
  RunConfig ideal;
  ideal.n_points = 30;
  const auto table = photonic_error_table(ideal, evaluate_sweep(ideal));
  for (const auto& row : table.rows)
    for (std::size_t k = 1; k <= 16; ++k) EXPECT_LE(std::stod(row[k]), 1e-10);
}

TEST(Compare, PhotonicDeviationDominatedBySwapLeak) {
  // With T_H < 1 both photons can reflect, carrying (a,H)(b,V) to (a,V)(b,H):
  // a 01 <-> 10 swap independent of the gate angle.
  RunConfig c;
  c.photonic.enabled = true;
  c.photonic.T_H = 0.985;
  const auto table = photonic_error_table(c, evaluate_sweep(c));
  const double th = 0.985, tv = 1.0 / 3.0;
  const double leak = (1 - th) * (1 - tv) / (th * tv + (1 - th) * (1 - tv));
  double best = -1.0;
  std::string best_col;
  double block_at_peak = 0.0;
  for (const auto& row : table.rows) {
    const double wt = std::stod(row[0]);
    for (std::size_t k = 1; k <= 16; ++k) {
      const double v = std::stod(row[k]);
      if (v > best) {
        best = v;
        best_col = table.header[k];
      }
      if (std::abs(wt - kPeak) < 0.01 && table.header[k] == "err_c_10_11")
        block_at_peak = v;
    }
  }
  EXPECT_NEAR(best, leak, 1e-9);
  EXPECT_TRUE(best_col.find("01") != std::string::npos || best_col.find("10") != std::string::npos) << best_col;
  EXPECT_GT(block_at_peak, 0.005);
  EXPECT_LT(block_at_peak, leak);
}

TEST(Compare, WritesPhotonicFileOnlyWhenEnabled) {
  const fs::path off = scratch("cmp_off");
  const fs::path on = scratch("cmp_on");
  RunConfig c;
  c.n_points = 5;
  c.samples = 1000;
  run_compare(c, off);
  EXPECT_TRUE(fs::exists(off / "mc_error.csv"));
  EXPECT_FALSE(fs::exists(off / "photonic_error.csv"));
  c.photonic.enabled = true;
  run_compare(c, on);
  EXPECT_TRUE(fs::exists(on / "photonic_error.csv"));
  const auto rows = parse_csv(slurp(on / "mc_error.csv"));
  EXPECT_EQ(rows[0][1], "err_j_00_00");
  EXPECT_EQ(rows[0].back(), "tv");
  EXPECT_EQ(rows.size(), 6u);
}

TEST(Invariants, ViolationDetected) {
  const RunConfig c;
  auto p = evaluate_point(c, 0.3);
  p.thermo.ift = 1.0 + 1e-6;
  EXPECT_THROW(check_invariants(p, true), InvariantViolation);
  EXPECT_NO_THROW(check_invariants(p, false));
  auto q = evaluate_point(c, 0.3);
  q.joint.j[2][3] = 1.5;
  EXPECT_THROW(check_invariants(q, false), InvariantViolation);
}

TEST(Cli, ExitCodes) {
  const fs::path out = scratch("cli");
  const fs::path conf = out / "run.conf";
  {
    std::ofstream f(conf);
    f << "n_points = 5\nsamples = 2000\nhist_times = 0.31\n";
  }
  EXPECT_EQ(run_cli("sweep --config " + conf.string() + " --out " + (out / "s").string()), 0);
  EXPECT_TRUE(fs::exists(out / "s" / "sweep.csv"));
  EXPECT_EQ(run_cli("hist --config " + conf.string() + " --out " + (out / "h").string()), 0);
  EXPECT_EQ(run_cli("compare --photonic --seed 5 --samples 500 --config " + conf.string() + " --out " +
                    (out / "c").string()),
            0);
  EXPECT_TRUE(fs::exists(out / "c" / "photonic_error.csv"));

  const fs::path bad = out / "bad.conf";
  {
    std::ofstream f(bad);
    f << "colour = blue\n";
  }
  EXPECT_EQ(run_cli("sweep --config " + bad.string() + " --out " + out.string()), 2);
  EXPECT_EQ(run_cli("sweep --config /nonexistent.conf"), 2);
  EXPECT_EQ(run_cli("bogus"), 2);
  EXPECT_EQ(run_cli("sweep --samples 0 --out " + out.string()), 2);
}

TEST(Photonic, SwapLeakBreaksLandauerAtZeroTime) {
  // At t = 0 the only imperfection is the 01 <-> 10 swap. Both outcomes have
  // dE = 0 but unequal populations, so <dsigma> > 0 with no energy change.
  RunConfig c;
  c.photonic.T_H = 0.985;
  const auto r = evaluate_photonic_point(c, 0.0);
  EXPECT_NO_THROW(check_invariants(r, false));
  EXPECT_NEAR(r.thermo.dE_mean, 0.0, 1e-15);

  const double th = 0.985, tv = 1.0 / 3.0;
  const double q = (1 - th) * (1 - tv) / (th * tv + (1 - th) * (1 - tv));
  const auto& p = r.p_in;
  const double f01 = (1 - q) * p[1] + q * p[2];
  const double f10 = q * p[1] + (1 - q) * p[2];
  const double ds = p[1] * std::log(p[1]) + p[2] * std::log(p[2]) - f01 * std::log(f01) - f10 * std::log(f10);
  EXPECT_NEAR(r.thermo.ds_mean, ds, 1e-12);
  EXPECT_NEAR(r.thermo.landauer_slack, -ds, 1e-12);
  EXPECT_LT(r.thermo.landauer_slack, -0.03);

  c.photonic.T_H = 1.0;
  for (int i = 0; i < c.n_points; ++i)
    EXPECT_GE(evaluate_photonic_point(c, c.grid_time(i)).thermo.landauer_slack, -1e-12);
}
