#include "gatetherm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gatetherm {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError(key + ": expected a finite number, got '" + v + "'");
  return out;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
  return out;
}

void assign(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "omega_L") c.omega_L = parse_double(key, v);
  else if (key == "omega_int") c.omega_int = parse_double(key, v);
  else if (key == "alpha") c.alpha = parse_double(key, v);
  else if (key == "beta_B") c.beta_B = parse_double(key, v);
  else if (key == "t_min") c.t_min = parse_double(key, v);
  else if (key == "t_max") c.t_max = parse_double(key, v);
  else if (key == "n_points") c.n_points = parse_int<int>(key, v);
  else if (key == "moments_max") c.moments_max = parse_int<int>(key, v);
  else if (key == "hist_times") c.hist_times = parse_list(key, v);
  else if (key == "samples") c.samples = parse_int<std::uint64_t>(key, v);
  else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, v);
  else if (key == "photonic.enabled") c.photonic.enabled = parse_bool(key, v);
  else if (key == "photonic.T_H") c.photonic.T_H = parse_double(key, v);
  else if (key == "photonic.T_V") c.photonic.T_V = parse_double(key, v);
  else if (key == "photonic.atten_H") c.photonic.atten_H = parse_double(key, v);
  else if (key == "photonic.eps") c.photonic.eps = parse_double(key, v);
  else throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (!(omega_L > 0.0)) throw ConfigError("omega_L: must be > 0");
  if (!(omega_int >= 0.0)) throw ConfigError("omega_int: must be >= 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha: must lie in (0, 1)");
  if (!(beta_B > 0.0)) throw ConfigError("beta_B: must be > 0");
  if (!(t_min < t_max)) throw ConfigError("t_min: must be < t_max");
  if (n_points < 2) throw ConfigError("n_points: must be >= 2");
  if (moments_max < 1) throw ConfigError("moments_max: must be >= 1");
  if (samples < 1) throw ConfigError("samples: must be >= 1");
  for (double t : hist_times)
    if (t < t_min || t > t_max) throw ConfigError("hist_times: " + std::to_string(t) + " lies outside [t_min, t_max]");
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(photonic.T_H)) throw ConfigError("photonic.T_H: must lie in [0, 1]");
  if (!unit(photonic.T_V)) throw ConfigError("photonic.T_V: must lie in [0, 1]");
  if (!unit(photonic.atten_H)) throw ConfigError("photonic.atten_H: must lie in [0, 1]");
  if (!(photonic.eps >= 0.0 && photonic.eps < 1.0)) throw ConfigError("photonic.eps: must lie in [0, 1)");
}

double RunConfig::grid_time(int i) const {
  if (i == n_points - 1) return t_max;
  return t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    assign(c, key, value);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace gatetherm
