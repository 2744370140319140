#include "nomafair/netsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>

#include "nomafair/errors.hpp"
#include "nomafair/units.hpp"

namespace nomafair {

namespace {

constexpr int kMaxResamples = 10000;

enum class Stream : std::uint32_t { Drop = 0, Fading = 1 };

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial_index, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial_index),
                    static_cast<std::uint32_t>(trial_index >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::vector<Point> uniform_points(std::mt19937_64& rng, int count, double side_km) {
  std::uniform_real_distribution<double> coord(0.0, side_km);
  std::vector<Point> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    pts.push_back({x, y});
  }
  return pts;
}

// Running accumulator for one optional per-trial mean.
struct Mean {
  double sum = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> get() const {
    return n > 0 ? std::optional<double>(sum / n) : std::nullopt;
  }
};

PairingOutcome outcome_for(Strategy s, const CellPopulation& cell, const FairnessConfig& f,
                           double beta) {
  switch (s) {
    case Strategy::Optimal: return pair_msd(cell, beta, f, PairAllocator::Optimal);
    case Strategy::SubOptimal: return pair_msd(cell, beta, f, PairAllocator::SubOptimal);
    case Strategy::UpperBound: return pair_msd(cell, beta, f, PairAllocator::UpperBound);
    case Strategy::LowerBound: return pair_msd(cell, beta, f, PairAllocator::LowerBound);
    case Strategy::NearFar: return pair_near_far(cell, beta, f);
    case Strategy::Oma: break;
  }
  PairingOutcome all_oma;
  all_oma.singles = cell;
  return all_oma;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  s.trials = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.trials;
  if (s.trials > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (s.trials - 1)) / std::sqrt(static_cast<double>(s.trials));
  }
  return s;
}

}  // namespace

double PathlossModel::loss_db(double distance_km) const {
  const double d = std::max(distance_km, min_distance_km);
  return intercept_db + slope_db * std::log10(d);
}

void NetworkConfig::validate() const {
  if (!(bs_density > 0.0)) throw ConfigError("bs_density must be > 0");
  if (!(user_density > 0.0)) throw ConfigError("user_density must be > 0");
  if (!(area_km2 > 0.0) || !std::isfinite(area_km2)) throw ConfigError("area must be > 0");
  if (!std::isfinite(tx_power_dbm)) throw ConfigError("tx_power_dbm must be finite");
  if (!std::isfinite(noise_power_dbm)) throw ConfigError("noise_power_dbm must be finite");
  if (!(fading_scale > 0.0)) throw ConfigError("fading_scale must be > 0");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (pathloss.id != "log_distance") {
    throw ConfigError("unknown pathloss model '" + pathloss.id + "'");
  }
  if (!(pathloss.min_distance_km > 0.0)) {
    throw ConfigError("pathloss min_distance_km must be > 0");
  }
}

double NetworkConfig::side_km() const { return std::sqrt(area_km2); }

Network drop_network(const NetworkConfig& cfg, std::uint64_t trial_index) {
  cfg.validate();
  auto rng = trial_engine(cfg.seed, trial_index, Stream::Drop);
  Network net;
  net.trial_index = trial_index;
  net.side_km = cfg.side_km();

  std::poisson_distribution<int> bs_count(cfg.bs_density * cfg.area_km2);
  int n_bs = bs_count(rng);
  while (n_bs == 0) {
    if (++net.resamples > kMaxResamples) {
      throw std::runtime_error("no base station drawn after " + std::to_string(kMaxResamples) +
                               " attempts; increase bs_density or area");
    }
    n_bs = bs_count(rng);
  }
  net.stations = uniform_points(rng, n_bs, net.side_km);

  std::poisson_distribution<int> user_count(cfg.user_density * cfg.area_km2);
  net.users = uniform_points(rng, user_count(rng), net.side_km);
  return net;
}

double torus_distance(Point a, Point b, double side_km) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  dx = std::min(dx, side_km - dx);
  dy = std::min(dy, side_km - dy);
  return std::hypot(dx, dy);
}

UserChannel link_user(int user_id, std::span<const double> gains, double tx_mw, double noise_mw) {
  if (gains.empty()) throw DomainError("user needs at least one base station");
  std::size_t serving = 0;
  for (std::size_t b = 1; b < gains.size(); ++b) {
    if (gains[b] > gains[serving]) serving = b;
  }
  double interference = 0.0;
  for (std::size_t b = 0; b < gains.size(); ++b) {
    if (b != serving) interference += tx_mw * gains[b];
  }
  const double signal = tx_mw * gains[serving];
  UserChannel u;
  u.user_id = user_id;
  u.serving_bs_id = static_cast<int>(serving);
  u.gamma = LinearSinr(signal / (noise_mw + interference));
  u.channel_gain = gains[serving];
  return u;
}

ChannelRealization compute_sinrs(const Network& network, const NetworkConfig& cfg) {
  auto rng = trial_engine(cfg.seed, network.trial_index, Stream::Fading);
  std::exponential_distribution<double> fading(1.0 / cfg.fading_scale);
  const double tx_mw = dbm_to_mw(cfg.tx_power_dbm);
  const double noise_mw = dbm_to_mw(cfg.noise_power_dbm);

  ChannelRealization out;
  out.users.reserve(network.users.size());
  out.fading.reserve(network.users.size());
  std::vector<double> gains(network.stations.size());
  for (std::size_t u = 0; u < network.users.size(); ++u) {
    std::vector<double>& draws = out.fading.emplace_back(network.stations.size());
    for (std::size_t b = 0; b < network.stations.size(); ++b) {
      const double d = torus_distance(network.users[u], network.stations[b], network.side_km);
      if (d < cfg.pathloss.min_distance_km) ++out.clamped_links;
      draws[b] = fading(rng);
      gains[b] = std::pow(10.0, -cfg.pathloss.loss_db(d) / 10.0) * draws[b];
    }
    out.users.push_back(link_user(static_cast<int>(u), gains, tx_mw, noise_mw));
  }
  return out;
}

std::vector<CellPopulation> cells_of(const std::vector<UserChannel>& users) {
  std::map<int, CellPopulation> by_bs;
  for (const UserChannel& u : users) by_bs[u.serving_bs_id].push_back(u);
  std::vector<CellPopulation> cells;
  cells.reserve(by_bs.size());
  for (auto& [bs, cell] : by_bs) {
    std::sort(cell.begin(), cell.end(),
              [](const UserChannel& a, const UserChannel& b) { return a.user_id < b.user_id; });
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Optimal: return "optimal";
    case Strategy::SubOptimal: return "suboptimal";
    case Strategy::UpperBound: return "upper_bound";
    case Strategy::LowerBound: return "lower_bound";
    case Strategy::NearFar: return "near_far";
    case Strategy::Oma: return "oma";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view id) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == id) return s;
  }
  throw ConfigError("unknown strategy '" + std::string(id) + "'");
}

TrialMetrics evaluate_strategies(const std::vector<CellPopulation>& cells,
                                 std::span<const Strategy> strategies,
                                 const FairnessConfig& fairness, double beta) {
  TrialMetrics tm;
  std::vector<CandidateMatching> matchings;
  matchings.reserve(cells.size());
  for (const CellPopulation& cell : cells) {
    tm.population += static_cast<int>(cell.size());
    matchings.push_back(candidate_pairs(cell));
  }

  for (Strategy s : strategies) {
    StrategyMetrics m;
    Mean strong, weak, oma, t_alpha, asr;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const PairingOutcome out = outcome_for(s, cells[c], fairness, beta);
      std::unordered_map<int, double> achieved;
      for (const NomaPair& p : out.pairs) {
        const RatePair r =
            noma_rates(PairLink(p.strong.gamma, p.weak.gamma, beta), *p.decision.allocation);
        achieved[p.strong.user_id] = r.strong;
        achieved[p.weak.user_id] = r.weak;
      }
      for (const UserChannel& u : out.singles) {
        const double r = oma_rate(u.gamma);
        achieved[u.user_id] = r;
        oma.add(r);
      }
      m.pair_count += static_cast<int>(out.pairs.size());
      m.oma_count += static_cast<int>(out.singles.size());

      for (const UserPair& p : matchings[c].pairs) {
        const double rs = achieved.at(p.strong.user_id);
        const double rw = achieved.at(p.weak.user_id);
        strong.add(rs);
        weak.add(rw);
        t_alpha.add(alpha_throughput(rs, rw, fairness.alpha));
        asr.add(rs + rw);
      }
    }
    m.mean_strong_rate = strong.get();
    m.mean_weak_rate = weak.get();
    m.mean_oma_rate = oma.get();
    m.mean_t_alpha = t_alpha.get();
    m.mean_asr = asr.get();
    tm.per_strategy[s] = m;
  }
  return tm;
}

TrialMetrics run_trial(const NetworkConfig& cfg, std::uint64_t trial_index,
                       std::span<const Strategy> strategies, const FairnessConfig& fairness,
                       double beta) {
  const Network net = drop_network(cfg, trial_index);
  const ChannelRealization ch = compute_sinrs(net, cfg);
  TrialMetrics tm = evaluate_strategies(cells_of(ch.users), strategies, fairness, beta);
  tm.resamples = net.resamples;
  tm.clamped_links = ch.clamped_links;
  return tm;
}

std::vector<CampaignPoint> run_campaign(const NetworkConfig& cfg,
                                        std::span<const SweepPoint> sweep,
                                        std::span<const Strategy> strategies,
                                        const FairnessConfig& fairness, int threads) {
  cfg.validate();
  fairness.validate();
  if (sweep.empty()) throw ConfigError("campaign sweep is empty");
  if (strategies.empty()) throw ConfigError("campaign needs at least one strategy");
  for (const SweepPoint& p : sweep) {
    FairnessConfig f = fairness;
    f.alpha = p.alpha;
    f.validate();
    if (!(p.beta >= 0.0 && p.beta <= 1.0)) throw ConfigError("sweep beta must lie in [0, 1]");
  }

  const auto n_trials = static_cast<std::size_t>(cfg.trials);
  // results[trial][sweep point]
  std::vector<std::vector<TrialMetrics>> results(n_trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t t = next++; t < n_trials; t = next++) {
      try {
        const Network net = drop_network(cfg, t);
        const ChannelRealization ch = compute_sinrs(net, cfg);
        const std::vector<CellPopulation> cells = cells_of(ch.users);
        std::vector<TrialMetrics> per_point;
        per_point.reserve(sweep.size());
        for (const SweepPoint& p : sweep) {
          FairnessConfig f = fairness;
          f.alpha = p.alpha;
          TrialMetrics tm = evaluate_strategies(cells, strategies, f, p.beta);
          tm.resamples = net.resamples;
          tm.clamped_links = ch.clamped_links;
          per_point.push_back(std::move(tm));
        }
        results[t] = std::move(per_point);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_trials;
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(n_trials)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Trial-ordered reduction keeps the floating-point sums independent of the
  // worker schedule.
  std::vector<CampaignPoint> points;
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    for (Strategy s : strategies) {
      std::map<std::string, std::vector<double>> samples;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const StrategyMetrics& m = results[t][k].per_strategy.at(s);
        const auto put = [&](const char* name, const std::optional<double>& v) {
          auto& bucket = samples[name];
          if (v) bucket.push_back(*v);
        };
        put("t_alpha", m.mean_t_alpha);
        put("mur_strong", m.mean_strong_rate);
        put("mur_weak", m.mean_weak_rate);
        put("mur_oma", m.mean_oma_rate);
        put("mean_asr", m.mean_asr);
        put("pair_count", static_cast<double>(m.pair_count));
        put("oma_count", static_cast<double>(m.oma_count));
      }
      CampaignPoint cp{sweep[k].alpha, sweep[k].beta, s, {}};
      for (const auto& [name, values] : samples) cp.metrics[name] = summarize(values);
      points.push_back(std::move(cp));
    }
  }
  return points;
}

}  // namespace nomafair
