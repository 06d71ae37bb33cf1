#pragma once

// Run configuration and its flat key/value file format:
//
//   # comment
//   omega_int = 5
//   hist_times = 0.31, 0.62
//   photonic.enabled = true
//   photonic.T_H = 0.985
//
// Unknown keys and malformed values are errors.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatetherm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhotonicConfig {
  bool enabled = false;
  double T_H = 1.0;
  double T_V = 1.0 / 3.0;
  double atten_H = 0.57735026918962576;
  double eps = 0.0;
};

struct RunConfig {
  double omega_L = 1.0;
  double omega_int = 5.0;
  double alpha = 0.2;
  double beta_B = 0.5;
  // Time bounds and histogram times are dimensionless omega_L * t.
  double t_min = 0.0;
  double t_max = 1.8483510282016262;  // 3 pi / sqrt(26)
  int n_points = 200;
  int moments_max = 5;
  std::vector<double> hist_times{0.31, 0.62};
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  PhotonicConfig photonic;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Dimensionless grid point i of n_points, endpoints included.
  double grid_time(int i) const;
};

/// Applies `text` on top of the defaults. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace gatetherm
