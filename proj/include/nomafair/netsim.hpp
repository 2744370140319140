#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nomafair/fairness.hpp"
#include "nomafair/pairing.hpp"

namespace nomafair {

/// Log-distance pathloss PL(dB) = intercept + slope * log10(d_km); distances
/// below min_distance_km are clamped.
struct PathlossModel {
  std::string id = "log_distance";
  double intercept_db = 128.1;
  double slope_db = 37.6;
  double min_distance_km = 0.01;

  double loss_db(double distance_km) const;
};

struct NetworkConfig {
  double bs_density = 25.0;    // stations per km^2
  double user_density = 120.0; // users per km^2
  double area_km2 = 1.0;       // square window, wrapped as a torus
  double tx_power_dbm = 46.0;
  double noise_power_dbm = -95.0;  // -174 dBm/Hz over 10 MHz plus 9 dB noise figure
  PathlossModel pathloss;
  double fading_scale = 1.0;   // mean of the exponential power fading
  int trials = 500;
  std::uint64_t seed = 1;

  void validate() const;
  double side_km() const;
};

struct Point {
  double x;
  double y;
};

struct Network {
  std::uint64_t trial_index = 0;
  double side_km = 0.0;
  std::vector<Point> stations;
  std::vector<Point> users;
  int resamples = 0;  // draws discarded because no station was placed
};

/// Poisson counts with mean density * area, uniform positions. Deterministic
/// in (cfg.seed, trial_index).
Network drop_network(const NetworkConfig& cfg, std::uint64_t trial_index);

/// Wrap-around distance on the square torus of side `side_km`.
double torus_distance(Point a, Point b, double side_km);

/// Associates a user with the station of largest received power (ties go to
/// the lower station id) and returns its SINR against noise plus every other
/// station transmitting on the same subchannel. `gains[b]` is |h|^2 towards
/// station b.
UserChannel link_user(int user_id, std::span<const double> gains, double tx_mw, double noise_mw);

struct ChannelRealization {
  std::vector<UserChannel> users;
  std::vector<std::vector<double>> fading;  // [user][station] power fading draws
  int clamped_links = 0;  // user/station distances raised to the pathloss minimum
};

ChannelRealization compute_sinrs(const Network& network, const NetworkConfig& cfg);

/// Groups users by serving station, each cell in user-id order. Cells
/// without users are omitted.
std::vector<CellPopulation> cells_of(const std::vector<UserChannel>& users);

enum class Strategy { Optimal, SubOptimal, UpperBound, LowerBound, NearFar, Oma };

inline constexpr Strategy kAllStrategies[] = {Strategy::Optimal,    Strategy::SubOptimal,
                                              Strategy::UpperBound, Strategy::LowerBound,
                                              Strategy::NearFar,    Strategy::Oma};

std::string_view to_string(Strategy s);
/// Throws ConfigError on an unknown id.
Strategy parse_strategy(std::string_view id);

/// Per-strategy trial aggregates. Rates are achieved rates in bits/s/Hz.
/// The strong/weak roles and the pair-level metrics (t_alpha, asr) refer to
/// the candidate front/back matching, which is identical for every strategy;
/// a rejected pair contributes its members' OMA rates. Means that have no
/// contributing users in the trial are empty.
struct StrategyMetrics {
  std::optional<double> mean_strong_rate;
  std::optional<double> mean_weak_rate;
  std::optional<double> mean_oma_rate;  // over users served OMA by this strategy
  std::optional<double> mean_t_alpha;
  std::optional<double> mean_asr;       // mean sum rate of a candidate pair
  int pair_count = 0;                   // NOMA pairs admitted
  int oma_count = 0;                    // users served OMA
};

struct TrialMetrics {
  int population = 0;
  int resamples = 0;
  int clamped_links = 0;
  std::map<Strategy, StrategyMetrics> per_strategy;
};

/// Applies every strategy to the same cells.
TrialMetrics evaluate_strategies(const std::vector<CellPopulation>& cells,
                                 std::span<const Strategy> strategies,
                                 const FairnessConfig& fairness, double beta);

TrialMetrics run_trial(const NetworkConfig& cfg, std::uint64_t trial_index,
                       std::span<const Strategy> strategies, const FairnessConfig& fairness,
                       double beta);

struct SweepPoint {
  double alpha;
  double beta;
};

struct MetricSummary {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;  // trials in which the metric was defined
};

struct CampaignPoint {
  double alpha;
  double beta;
  Strategy strategy;
  std::map<std::string, MetricSummary> metrics;  // keyed by metric name
};

/// Runs cfg.trials trials; each trial's network is realized once and shared
/// by every sweep point and strategy. Results do not depend on `threads`.
std::vector<CampaignPoint> run_campaign(const NetworkConfig& cfg,
                                        std::span<const SweepPoint> sweep,
                                        std::span<const Strategy> strategies,
                                        const FairnessConfig& fairness, int threads = 1);

}  // namespace nomafair
