#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nomafair/fairness.hpp"
#include "nomafair/netsim.hpp"

namespace nomafair {

/// Metric names that may appear in a ResultRow.
///   t_alpha        mean alpha-fair throughput of a candidate pair
///   mur_strong     mean achieved rate of strong-role users
///   mur_weak       mean achieved rate of weak-role users
///   mur_oma        mean rate of users served OMA
///   mean_asr       mean sum rate of a candidate pair
///   delta_s        strong-user power fraction (delta sweeps)
///   msd_satisfied  1 if the pair passes the MSD criterion, else 0
///   pair_count     NOMA pairs admitted per trial
///   oma_count      users served OMA per trial
inline constexpr std::string_view kMetricNames[] = {
    "t_alpha", "mur_strong", "mur_weak",   "mur_oma",  "mean_asr",
    "delta_s", "msd_satisfied", "pair_count", "oma_count"};

bool is_known_metric(std::string_view name);

// Strategy column for rows that describe the link rather than an allocation.
inline constexpr std::string_view kLinkStrategy = "link";

struct ResultRow {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> gamma_s_db;
  std::optional<double> gamma_w_db;
  std::string strategy;
  std::string metric;
  double value = 0.0;
  int trials = 1;
  double std_error = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "alpha,beta,gamma_s_db,gamma_w_db,strategy,metric,value,trials,stderr";

struct LinkPoint {
  double gamma_s_db;
  double gamma_w_db;
};

/// A sweep value of beta, or the link's own beta*.
struct BetaStar {};
using BetaSpec = std::variant<double, BetaStar>;

/// For every link, beta and alpha: delta_s of the optimal and sub-optimal
/// allocators (when they pair), the two bounds reported as the delta_s of the
/// upper_bound / lower_bound strategies, and msd_satisfied under the `link`
/// strategy. A BetaStar entry is skipped for links whose beta* lies outside
/// [0, 1].
std::vector<ResultRow> emit_delta_sweep(std::span<const LinkPoint> links,
                                        std::span<const BetaSpec> betas,
                                        std::span<const double> alphas,
                                        const FairnessConfig& cfg);

std::vector<ResultRow> rows_from_campaign(std::span<const CampaignPoint> points);

/// Orders rows by (alpha, beta, strategy, metric), then gamma_s_db and
/// gamma_w_db with absent keys first.
void sort_rows(std::vector<ResultRow>& rows);

/// %.9g, the fixed float format of every artifact.
std::string format_value(double v);

/// Sorted CSV text, header first, newline-terminated lines.
std::string format_csv(std::vector<ResultRow> rows);
std::vector<ResultRow> parse_csv(std::string_view text);

/// JSON array of objects mirroring the CSV rows (and their rounding).
std::string format_json(std::vector<ResultRow> rows);

/// Throws DomainError for zero rows (no file is created) and IoError naming
/// the path when it cannot be written.
void emit_campaign_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
void emit_campaign_json(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

}  // namespace nomafair
