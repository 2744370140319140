#include "nomafair/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "nomafair/allocator.hpp"
#include "nomafair/bounds.hpp"
#include "nomafair/errors.hpp"

namespace nomafair {

namespace {

std::string optional_field(const std::optional<double>& v) {
  return v ? format_value(*v) : std::string();
}

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw DomainError("CSV line " + std::to_string(line) + ": bad number '" + std::string(field) +
                      "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Applies the artifact rounding so JSON carries the same numbers as the CSV.
double rounded(double v) { return std::stod(format_value(v)); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void delta_rows(std::vector<ResultRow>& rows, const LinkPoint& lp, double beta, double alpha,
                const FairnessConfig& cfg) {
  const LinearSinr gs = LinearSinr::from_db(lp.gamma_s_db);
  const LinearSinr gw = LinearSinr::from_db(lp.gamma_w_db);
  const auto row = [&](std::string_view strategy, std::string_view metric, double value) {
    rows.push_back({alpha, beta, lp.gamma_s_db, lp.gamma_w_db, std::string(strategy),
                    std::string(metric), value, 1, 0.0});
  };

  row(kLinkStrategy, "msd_satisfied", msd_satisfied(gs, gw) ? 1.0 : 0.0);
  row(to_string(AllocationSource::LowerBound), "delta_s", delta_lower_bound(gs, beta));
  row(to_string(AllocationSource::UpperBound), "delta_s", delta_upper_bound(gw));
  if (gs < gw) return;  // no strong/weak ordering, nothing to allocate

  FairnessConfig f = cfg;
  f.alpha = alpha;
  const PairLink link(gs, gw, beta);
  if (const auto d = solve_optimal(link, f); d.paired()) {
    row(to_string(AllocationSource::Optimal), "delta_s", d.allocation->delta_s());
  }
  if (const auto d = solve_suboptimal(link, f); d.paired()) {
    row(to_string(AllocationSource::SubOptimal), "delta_s", d.allocation->delta_s());
  }
}

}  // namespace

bool is_known_metric(std::string_view name) {
  return std::find(std::begin(kMetricNames), std::end(kMetricNames), name) !=
         std::end(kMetricNames);
}

std::vector<ResultRow> emit_delta_sweep(std::span<const LinkPoint> links,
                                        std::span<const BetaSpec> betas,
                                        std::span<const double> alphas,
                                        const FairnessConfig& cfg) {
  if (links.empty() || betas.empty() || alphas.empty()) {
    throw DomainError("delta sweep needs non-empty link, beta and alpha grids");
  }
  std::vector<ResultRow> rows;
  for (const LinkPoint& lp : links) {
    for (const BetaSpec& spec : betas) {
      double beta = 0.0;
      if (std::holds_alternative<BetaStar>(spec)) {
        const LinearSinr gs = LinearSinr::from_db(lp.gamma_s_db);
        const LinearSinr gw = LinearSinr::from_db(lp.gamma_w_db);
        beta = beta_star(gs, gw);
        if (!(beta >= 0.0 && beta <= 1.0)) continue;
      } else {
        beta = std::get<double>(spec);
      }
      for (double alpha : alphas) delta_rows(rows, lp, beta, alpha, cfg);
    }
  }
  return rows;
}

std::vector<ResultRow> rows_from_campaign(std::span<const CampaignPoint> points) {
  std::vector<ResultRow> rows;
  for (const CampaignPoint& p : points) {
    for (const auto& [name, summary] : p.metrics) {
      if (summary.trials == 0) continue;
      rows.push_back({p.alpha, p.beta, std::nullopt, std::nullopt, std::string(to_string(p.strategy)),
                      name, summary.mean, summary.trials, summary.std_error});
    }
  }
  return rows;
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.alpha, a.beta, a.strategy, a.metric, a.gamma_s_db, a.gamma_w_db) <
           std::tie(b.alpha, b.beta, b.strategy, b.metric, b.gamma_s_db, b.gamma_w_db);
  });
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_csv(std::vector<ResultRow> rows) {
  sort_rows(rows);
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRow& r : rows) {
    out += format_value(r.alpha) + ',' + format_value(r.beta) + ',' + optional_field(r.gamma_s_db) +
           ',' + optional_field(r.gamma_w_db) + ',' + r.strategy + ',' + r.metric + ',' +
           format_value(r.value) + ',' + std::to_string(r.trials) + ',' +
           format_value(r.std_error) + '\n';
  }
  return out;
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw DomainError("CSV header mismatch");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw DomainError("CSV line " + std::to_string(line_no) + ": expected 9 fields");
    }
    ResultRow r;
    r.alpha = parse_double(f[0], line_no);
    r.beta = parse_double(f[1], line_no);
    if (!f[2].empty()) r.gamma_s_db = parse_double(f[2], line_no);
    if (!f[3].empty()) r.gamma_w_db = parse_double(f[3], line_no);
    r.strategy = std::string(f[4]);
    r.metric = std::string(f[5]);
    r.value = parse_double(f[6], line_no);
    r.trials = static_cast<int>(parse_double(f[7], line_no));
    r.std_error = parse_double(f[8], line_no);
    rows.push_back(std::move(r));
  }
  if (line_no == 0) throw DomainError("CSV is empty");
  return rows;
}

std::string format_json(std::vector<ResultRow> rows) {
  sort_rows(rows);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    nlohmann::ordered_json o;
    o["alpha"] = rounded(r.alpha);
    o["beta"] = rounded(r.beta);
    o["gamma_s_db"] = r.gamma_s_db ? nlohmann::ordered_json(rounded(*r.gamma_s_db)) : nullptr;
    o["gamma_w_db"] = r.gamma_w_db ? nlohmann::ordered_json(rounded(*r.gamma_w_db)) : nullptr;
    o["strategy"] = r.strategy;
    o["metric"] = r.metric;
    o["value"] = rounded(r.value);
    o["trials"] = r.trials;
    o["stderr"] = rounded(r.std_error);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + '\n';
}

void emit_campaign_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw DomainError("refusing to write an empty result set to " + path.string());
  write_file(path, format_csv(rows));
}

void emit_campaign_json(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw DomainError("refusing to write an empty result set to " + path.string());
  write_file(path, format_json(rows));
}

}  // namespace nomafair
