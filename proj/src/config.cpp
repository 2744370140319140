#include "nomafair/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "nomafair/errors.hpp"

namespace nomafair {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + exact(values[i]);
  return out;
}

using Setter = std::function<void(SimulationConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"bs_density", [](auto& c, auto v) { c.network.bs_density = parse_number<double>(v); }},
      {"user_density", [](auto& c, auto v) { c.network.user_density = parse_number<double>(v); }},
      {"area_km2", [](auto& c, auto v) { c.network.area_km2 = parse_number<double>(v); }},
      {"tx_power_dbm", [](auto& c, auto v) { c.network.tx_power_dbm = parse_number<double>(v); }},
      {"noise_power_dbm",
       [](auto& c, auto v) { c.network.noise_power_dbm = parse_number<double>(v); }},
      {"pathloss_model", [](auto& c, auto v) { c.network.pathloss.id = std::string(trim(v)); }},
      {"pathloss_intercept_db",
       [](auto& c, auto v) { c.network.pathloss.intercept_db = parse_number<double>(v); }},
      {"pathloss_slope_db",
       [](auto& c, auto v) { c.network.pathloss.slope_db = parse_number<double>(v); }},
      {"pathloss_min_distance_km",
       [](auto& c, auto v) { c.network.pathloss.min_distance_km = parse_number<double>(v); }},
      {"fading_scale", [](auto& c, auto v) { c.network.fading_scale = parse_number<double>(v); }},
      {"trials", [](auto& c, auto v) { c.network.trials = parse_number<int>(v); }},
      {"seed", [](auto& c, auto v) { c.network.seed = parse_number<std::uint64_t>(v); }},
      {"alphas", [](auto& c, auto v) { c.alphas = parse_double_list(v); }},
      {"betas", [](auto& c, auto v) { c.betas = parse_double_list(v); }},
      {"tau", [](auto& c, auto v) { c.fairness.tau = parse_number<double>(v); }},
      {"solver_tol", [](auto& c, auto v) { c.fairness.solver_tol = parse_number<double>(v); }},
      {"solver_grid_points",
       [](auto& c, auto v) { c.fairness.grid_points = parse_number<int>(v); }},
      {"strategies", [](auto& c, auto v) { c.strategies = parse_strategy_list(v); }},
  };
  return table;
}

}  // namespace

std::vector<SweepPoint> SimulationConfig::sweep() const {
  std::vector<SweepPoint> points;
  for (double a : alphas) {
    for (double b : betas) points.push_back({a, b});
  }
  return points;
}

void SimulationConfig::validate() const {
  network.validate();
  try {
    fairness.validate();
    for (double a : alphas) {
      FairnessConfig f = fairness;
      f.alpha = a;
      f.validate();
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (alphas.empty()) throw ConfigError("alphas must not be empty");
  if (betas.empty()) throw ConfigError("betas must not be empty");
  for (double b : betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("betas must lie in [0, 1]");
  }
  if (strategies.empty()) throw ConfigError("strategies must not be empty");
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_number<double>(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::vector<Strategy> parse_strategy_list(std::string_view text) {
  std::vector<Strategy> out;
  std::set<Strategy> seen;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const Strategy s = parse_strategy(trim(text.substr(start, end - start)));
    if (seen.insert(s).second) out.push_back(s);
    start = end + 1;
  }
  return out;
}

SimulationConfig parse_config(std::string_view text, std::string_view source) {
  SimulationConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    if (key.starts_with("manifest.")) continue;

    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + "invalid value for '" + std::string(key) + "': " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string format_config(const SimulationConfig& c) {
  std::string strategies;
  for (std::size_t i = 0; i < c.strategies.size(); ++i) {
    strategies += (i ? "," : "") + std::string(to_string(c.strategies[i]));
  }
  std::ostringstream out;
  out << "bs_density = " << exact(c.network.bs_density) << '\n'
      << "user_density = " << exact(c.network.user_density) << '\n'
      << "area_km2 = " << exact(c.network.area_km2) << '\n'
      << "tx_power_dbm = " << exact(c.network.tx_power_dbm) << '\n'
      << "noise_power_dbm = " << exact(c.network.noise_power_dbm) << '\n'
      << "pathloss_model = " << c.network.pathloss.id << '\n'
      << "pathloss_intercept_db = " << exact(c.network.pathloss.intercept_db) << '\n'
      << "pathloss_slope_db = " << exact(c.network.pathloss.slope_db) << '\n'
      << "pathloss_min_distance_km = " << exact(c.network.pathloss.min_distance_km) << '\n'
      << "fading_scale = " << exact(c.network.fading_scale) << '\n'
      << "trials = " << c.network.trials << '\n'
      << "seed = " << c.network.seed << '\n'
      << "alphas = " << join(c.alphas) << '\n'
      << "betas = " << join(c.betas) << '\n'
      << "tau = " << exact(c.fairness.tau) << '\n'
      << "solver_tol = " << exact(c.fairness.solver_tol) << '\n'
      << "solver_grid_points = " << c.fairness.grid_points << '\n'
      << "strategies = " << strategies << '\n';
  return out.str();
}

std::string format_manifest(const Manifest& m) {
  std::string out = "# run manifest; usable as --config to reproduce this run\n";
  out += "manifest.tool_version = " + std::string(kToolVersion) + "\n";
  for (const auto& [name, path] : m.artifacts) out += "manifest." + name + " = " + path + "\n";
  out += format_config(m.config);
  return out;
}

}  // namespace nomafair
