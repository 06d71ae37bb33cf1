#include "gatetherm/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gatetherm {

namespace {

constexpr double kProbTol = 1e-12;
constexpr double kSumTol = 1e-10;

PointResult evaluate_from_joint(const JointTable& joint, const ProbVector& p_in, double beta,
                                int moments_max, double wt) {
  PointResult r;
  r.wt = wt;
  r.p_in = p_in;
  r.joint = joint;
  r.p_fin = final_probs(joint);
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin)
      r.conditional[fin][in] = p_in[in] > 0.0 ? joint.j[in][fin] / p_in[in] : 0.0;
  r.sigma = entropy_realizations(r.p_in, r.p_fin);
  r.dE = delta_e_distribution(joint);
  r.ds = entropy_distribution(joint, r.sigma);
  r.dE_moments = moments(r.dE, moments_max);
  r.ds_moments = moments(r.ds, moments_max);
  r.thermo = thermo_report(joint, r.sigma, beta);
  return r;
}

ModelParams params_of(const RunConfig& cfg) { return ModelParams(cfg.omega_L, cfg.omega_int); }

DensityOperator rho0_of(const RunConfig& cfg, const ModelParams& p) {
  return thermal_state(ThermalSpec(cfg.alpha, cfg.beta_B, p), p);
}

photonic::OpticalParams optics_of(const RunConfig& cfg) {
  photonic::OpticalParams o;
  o.T_H = cfg.photonic.T_H;
  o.T_V = cfg.photonic.T_V;
  o.atten_H = cfg.photonic.atten_H;
  o.accidental_eps = cfg.photonic.eps;
  return o;
}

void check_prob(double x, const std::string& what, double wt) {
  if (!(x >= -kProbTol && x <= 1.0 + kProbTol))
    throw InvariantViolation(what + " = " + format_number(x) + " outside [0, 1] at wt = " + format_number(wt));
}

void check_sum(double s, const std::string& what, double wt) {
  if (std::abs(s - 1.0) > kSumTol)
    throw InvariantViolation(what + " sums to " + format_number(s) + " at wt = " + format_number(wt));
}

std::vector<std::string> moment_names(const std::string& prefix, int m) {
  std::vector<std::string> out;
  for (int h = 1; h <= m; ++h) out.push_back(prefix + std::to_string(h));
  return out;
}

std::vector<std::string> format_row(double wt, const std::vector<double>& values) {
  std::vector<std::string> row{format_number(wt)};
  for (double v : values) row.push_back(format_number(v));
  return row;
}

std::vector<double> joint_values(const JointTable& j) {
  std::vector<double> out;
  for (const auto& row : j.j)
    for (double x : row) out.push_back(x);
  return out;
}

template <typename T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// The curves are periodic with peaks of equal height, so "the" peak is the
// first local maximum on the grid; the global argmax is reported alongside.
nlohmann::json peak(const std::vector<PointResult>& pts, const std::function<std::optional<double>(const PointResult&)>& f) {
  std::vector<std::optional<double>> v;
  for (const auto& p : pts) v.push_back(f(p));
  const std::optional<std::size_t> first = first_local_max(v);
  if (!first) return nullptr;
  std::size_t global = *first;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] && *v[i] > *v[global]) global = i;
  return {{"index", *first},
          {"wt", pts[*first].wt},
          {"value", *v[*first]},
          {"global_index", global},
          {"global_wt", pts[global].wt},
          {"global_value", *v[global]}};
}

}  // namespace

std::optional<std::size_t> first_local_max(const std::vector<std::optional<double>>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i]) continue;
    const bool left_ok = i > 0 && v[i - 1] && *v[i] > *v[i - 1];
    const bool right_ok = i + 1 < n && v[i + 1] && *v[i] >= *v[i + 1];
    if (left_ok && right_ok) return i;
  }
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] && (!best || *v[i] > *v[*best])) best = i;
  return best;
}

PointResult evaluate_from_conditional(const ProbVector& p_in, const ConditionalMatrix& c, double beta,
                                      int moments_max, double wt) {
  PointResult r = evaluate_from_joint(joint_table(p_in, c), p_in, beta, moments_max, wt);
  r.conditional = c;
  return r;
}

PointResult evaluate_point(const RunConfig& cfg, double wt) {
  const ModelParams p = params_of(cfg);
  const double t = wt / cfg.omega_L;
  const Propagator P = propagator_analytic(p, t);
  const DensityOperator rho0 = rho0_of(cfg, p);

  PointResult r = evaluate_from_conditional(initial_probs(rho0), conditional_matrix(P), cfg.beta_B,
                                            cfg.moments_max, wt);
  r.h2_sq = std::norm(P.h2);
  const TwoQubitState psi = P.U * basis_state(basis_index(1, 0));
  TwoQubitOperator rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) rho(i, k) = psi[i] * std::conj(psi[k]);
  r.cl1 = coherence_l1(rho);
  return r;
}

PointResult evaluate_photonic_point(const RunConfig& cfg, double wt) {
  const ModelParams p = params_of(cfg);
  const double t = wt / cfg.omega_L;
  const DensityOperator rho0 = rho0_of(cfg, p);
  const ConditionalMatrix c = photonic::photonic_conditional_matrix(optics_of(cfg), gate_angle(p, t));
  PointResult r = evaluate_from_conditional(initial_probs(rho0), c, cfg.beta_B, cfg.moments_max, wt);
  r.h2_sq = std::norm(h_coeffs(p, t).h2);
  return r;
}

PointResult evaluate_empirical(const EmpiricalTable& e, double beta, int moments_max, double wt) {
  const JointTable f = e.frequencies();
  return evaluate_from_joint(f, initial_marginal(f), beta, moments_max, wt);
}

std::vector<PointResult> evaluate_sweep(const RunConfig& cfg) {
  return parallel_map<PointResult>(cfg.n_points, [&](int i) { return evaluate_point(cfg, cfg.grid_time(i)); });
}

void check_invariants(const PointResult& r, bool unital) {
  for (std::size_t i = 0; i < kOutcomes; ++i) {
    check_prob(r.p_in[i], "p_in", r.wt);
    check_prob(r.p_fin[i], "p_fin", r.wt);
    for (std::size_t k = 0; k < kOutcomes; ++k) {
      check_prob(r.joint.j[i][k], "joint", r.wt);
      check_prob(r.conditional[i][k], "conditional", r.wt);
    }
  }
  check_sum(r.joint.total(), "joint table", r.wt);
  check_sum(r.dE.total(), "Prob(dE)", r.wt);
  check_sum(r.ds.total(), "Prob(dsigma)", r.wt);
  if (unital) {
    if (std::abs(r.thermo.ift - 1.0) > kSumTol)
      throw InvariantViolation("<exp(-dsigma)> = " + format_number(r.thermo.ift) + " at wt = " + format_number(r.wt));
    if (r.thermo.ds_mean < -kProbTol)
      throw InvariantViolation("<dsigma> = " + format_number(r.thermo.ds_mean) + " < 0 at wt = " + format_number(r.wt));
  }
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

std::vector<std::string> joint_column_names(const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t in = 0; in < kOutcomes; ++in)
    for (std::size_t fin = 0; fin < kOutcomes; ++fin)
      out.push_back(prefix + OutcomeLabel::from_index(in).bits() + "_" + OutcomeLabel::from_index(fin).bits());
  return out;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

Table sweep_table(const std::vector<PointResult>& pts, int moments_max) {
  Table t;
  t.header = {"wt"};
  t.header = concat(t.header, joint_column_names());
  t.header = concat(t.header, moment_names("dE_m", moments_max));
  t.header = concat(t.header, moment_names("ds_m", moments_max));
  t.header = concat(t.header, {"cl1_10", "ift", "landauer_lhs", "ds_mean", "ratio"});
  for (const auto& p : pts) {
    std::vector<double> v = joint_values(p.joint);
    v = concat(v, p.dE_moments);
    v = concat(v, p.ds_moments);
    v = concat(v, {p.cl1, p.thermo.ift, p.thermo.landauer_lhs, p.thermo.ds_mean});
    auto row = format_row(p.wt, v);
    row.push_back(p.thermo.ratio ? format_number(*p.thermo.ratio) : "");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table realizations_table(const std::vector<PointResult>& pts) {
  Table t;
  t.header = concat({"wt"}, joint_column_names("ds_"));
  for (const auto& p : pts) {
    std::vector<std::string> row{format_number(p.wt)};
    for (const auto& r : p.sigma.sigma)
      for (const auto& s : r) row.push_back(s ? format_number(*s) : "");
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::json sweep_summary(const RunConfig& cfg, const std::vector<PointResult>& pts) {
  nlohmann::json j;
  j["parameters"] = {{"omega_L", cfg.omega_L}, {"omega_int", cfg.omega_int}, {"alpha", cfg.alpha},
                     {"beta_B", cfg.beta_B},   {"t_min", cfg.t_min},         {"t_max", cfg.t_max},
                     {"n_points", cfg.n_points}};
  j["grid_step"] = (cfg.t_max - cfg.t_min) / (cfg.n_points - 1);
  j["peaks"] = {
      {"dE_mean", peak(pts, [](const PointResult& p) { return std::optional(p.thermo.dE_mean); })},
      {"h2_sq", peak(pts, [](const PointResult& p) { return std::optional(p.h2_sq); })},
      {"ds_mean", peak(pts, [](const PointResult& p) { return std::optional(p.thermo.ds_mean); })},
      {"cl1_10", peak(pts, [](const PointResult& p) { return std::optional(p.cl1); })},
      {"ratio", peak(pts, [](const PointResult& p) { return p.thermo.ratio; })},
  };
  double min_slack = INFINITY;
  double max_ift_dev = 0.0;
  for (const auto& p : pts) {
    min_slack = std::min(min_slack, p.thermo.landauer_slack);
    max_ift_dev = std::max(max_ift_dev, std::abs(p.thermo.ift - 1.0));
  }
  j["landauer_min_slack"] = min_slack;
  j["ift_max_deviation"] = max_ift_dev;
  return j;
}

Table histogram_table(const std::vector<PointResult>& pts, bool energy) {
  Table t;
  t.header = {"wt", "value", "probability"};
  for (const auto& p : pts)
    for (const auto& a : (energy ? p.dE : p.ds).atoms())
      t.rows.push_back({format_number(p.wt), format_number(a.value), format_number(a.prob)});
  return t;
}

Table mc_error_table(const RunConfig& cfg, const std::vector<PointResult>& exact) {
  const ModelParams p = params_of(cfg);
  const DensityOperator rho0 = rho0_of(cfg, p);
  const int n = static_cast<int>(exact.size());

  const std::vector<PointResult> empirical = parallel_map<PointResult>(n, [&](int i) {
    const double wt = exact[static_cast<std::size_t>(i)].wt;
    const Propagator P = propagator_analytic(p, wt / cfg.omega_L);
    const SampleConfig sc{cfg.samples, cfg.seed + static_cast<std::uint64_t>(i), 1};
    return evaluate_empirical(sample_tpm(rho0, P.U, sc), cfg.beta_B, cfg.moments_max, wt);
  });

  Curves theory;
  Curves estimate;
  theory.names = concat(concat(joint_column_names(), moment_names("dE_m", cfg.moments_max)),
                        moment_names("ds_m", cfg.moments_max));
  estimate.names = theory.names;
  auto row_of = [](const PointResult& r) {
    return concat(concat(joint_values(r.joint), r.dE_moments), r.ds_moments);
  };
  for (int i = 0; i < n; ++i) {
    const auto& a = exact[static_cast<std::size_t>(i)];
    const auto& b = empirical[static_cast<std::size_t>(i)];
    theory.times.push_back(a.wt);
    estimate.times.push_back(b.wt);
    theory.rows.push_back(row_of(a));
    estimate.rows.push_back(row_of(b));
  }
  const Curves err = error_report(theory, estimate);

  Table t;
  t.header = {"wt"};
  for (const auto& name : err.names) t.header.push_back("err_" + name);
  t.header.push_back("tv");
  for (std::size_t i = 0; i < err.times.size(); ++i) {
    auto row = format_row(err.times[i], err.rows[i]);
    double tv = 0.0;
    for (std::size_t c = 0; c < kOutcomes * kOutcomes; ++c) tv += err.rows[i][c];
    row.push_back(format_number(0.5 * tv));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table photonic_error_table(const RunConfig& cfg, const std::vector<PointResult>& exact) {
  const int n = static_cast<int>(exact.size());
  const std::vector<PointResult> imperfect = parallel_map<PointResult>(
      n, [&](int i) { return evaluate_photonic_point(cfg, exact[static_cast<std::size_t>(i)].wt); });

  Table t;
  t.header = concat({"wt"}, joint_column_names("err_c_"));
  t.header = concat(t.header, moment_names("err_dE_m", cfg.moments_max));
  for (int i = 0; i < n; ++i) {
    const auto& a = exact[static_cast<std::size_t>(i)];
    const auto& b = imperfect[static_cast<std::size_t>(i)];
    std::vector<double> v;
    for (std::size_t in = 0; in < kOutcomes; ++in)
      for (std::size_t fin = 0; fin < kOutcomes; ++fin)
        v.push_back(std::abs(a.conditional[fin][in] - b.conditional[fin][in]));
    for (std::size_t h = 0; h < a.dE_moments.size(); ++h)
      v.push_back(std::abs(a.dE_moments[h] - b.dE_moments[h]));
    t.rows.push_back(format_row(a.wt, v));
  }
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  const auto pts = evaluate_sweep(cfg);
  for (const auto& p : pts) check_invariants(p, true);
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "sweep.csv", sweep_table(pts, cfg.moments_max).to_csv());
  write_text(out_dir / "realizations.csv", realizations_table(pts).to_csv());
  write_text(out_dir / "summary.json", sweep_summary(cfg, pts).dump(2) + "\n");
}

void run_hist(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  std::vector<PointResult> pts;
  for (double wt : cfg.hist_times) {
    pts.push_back(evaluate_point(cfg, wt));
    check_invariants(pts.back(), true);
  }
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "hist_dE.csv", histogram_table(pts, true).to_csv());
  write_text(out_dir / "hist_ds.csv", histogram_table(pts, false).to_csv());
}

void run_compare(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  const auto exact = evaluate_sweep(cfg);
  for (const auto& p : exact) check_invariants(p, true);
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "mc_error.csv", mc_error_table(cfg, exact).to_csv());
  if (cfg.photonic.enabled) write_text(out_dir / "photonic_error.csv", photonic_error_table(cfg, exact).to_csv());
}

}  // namespace gatetherm
