#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nomafair/fairness.hpp"
#include "nomafair/netsim.hpp"

namespace nomafair {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Everything a simulation run depends on. Defaults are the documented
/// urban-macro set; see README for the key list.
struct SimulationConfig {
  NetworkConfig network;
  FairnessConfig fairness;
  std::vector<double> alphas{1.0};
  std::vector<double> betas{0.0, 0.01, 0.02, 0.04, 0.06, 0.08, 0.1};
  std::vector<Strategy> strategies{std::begin(kAllStrategies), std::end(kAllStrategies)};

  std::vector<SweepPoint> sweep() const;  // alphas x betas, alpha-major
  void validate() const;
};

/// Parses flat `key = value` text over the defaults. `#` starts a comment.
/// Keys prefixed `manifest.` are accepted and ignored, so a run manifest is
/// itself a valid config. Throws ConfigError naming source, line and key.
SimulationConfig parse_config(std::string_view text, std::string_view source = "config");
SimulationConfig load_config(const std::filesystem::path& path);

/// Every key with its resolved value; doubles are written with 17 significant
/// digits so that parse_config(format_config(c)) restores c exactly.
std::string format_config(const SimulationConfig& cfg);

struct Manifest {
  SimulationConfig config;
  std::map<std::string, std::string> artifacts;  // name -> path
};

std::string format_manifest(const Manifest& m);

std::vector<double> parse_double_list(std::string_view text);
std::vector<Strategy> parse_strategy_list(std::string_view text);

}  // namespace nomafair
