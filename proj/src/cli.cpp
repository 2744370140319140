#include "nomafair/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nomafair/allocator.hpp"
#include "nomafair/bounds.hpp"
#include "nomafair/config.hpp"
#include "nomafair/errors.hpp"
#include "nomafair/fairness.hpp"
#include "nomafair/netsim.hpp"
#include "nomafair/report.hpp"

namespace nomafair {

namespace {

namespace fs = std::filesystem;

struct PairArgs {
  double gamma_s_db = 0.0;
  double gamma_w_db = 0.0;
  double beta = 0.0;
  double alpha = 1.0;
  double tau = 0.5;
  std::string solver = "optimal";
  std::string json_path;
};

struct SweepArgs {
  std::string axis;
  std::string from;
  std::string to;
  int steps = 0;
  std::string values;
  std::string alphas;
  std::string betas;
  std::optional<double> gamma_s_db;
  std::optional<double> gamma_w_db;
  double tau = 0.5;
  std::string out;
};

struct SimulateArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string strategies;
  std::string alphas;
  std::string betas;
  std::string out_dir;
  std::optional<int> threads;
};

// Wraps input-validation failures from the library as usage errors.
template <typename F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const SingularInputError& e) {
    throw ConfigError(e.what());
  }
}

std::string fmt(double v) { return format_value(v); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

int cmd_pair(const PairArgs& a, std::ostream& out) {
  const auto [link, cfg] = as_usage([&] {
    FairnessConfig f;
    f.alpha = a.alpha;
    f.tau = a.tau;
    f.validate();
    return std::pair{PairLink(LinearSinr::from_db(a.gamma_s_db), LinearSinr::from_db(a.gamma_w_db),
                              a.beta),
                     f};
  });

  const AllocationDecision d =
      a.solver == "optimal" ? solve_optimal(link, cfg) : solve_suboptimal(link, cfg);
  const RatePair oma = oma_rates(link);
  const RatePair noma = d.paired() ? noma_rates(link, *d.allocation) : RatePair{0.0, 0.0};
  const RatePair served = d.paired() ? noma : oma;
  const double u_sum = utility(served.strong, cfg.alpha) + utility(served.weak, cfg.alpha);
  const double t_alpha = alpha_throughput(served.strong, served.weak, cfg.alpha);

  nlohmann::ordered_json j;
  j["gamma_s_db"] = a.gamma_s_db;
  j["gamma_w_db"] = a.gamma_w_db;
  j["beta"] = a.beta;
  j["alpha"] = a.alpha;
  j["tau"] = a.tau;
  j["solver"] = a.solver;
  j["delta_lb"] = d.diagnostics.bounds.delta_lb;
  j["delta_ub"] = d.diagnostics.bounds.delta_ub;
  j["msd_threshold"] = d.diagnostics.criterion.msd_threshold;
  j["beta_star"] = d.diagnostics.criterion.beta_star;
  j["msd_satisfied"] = d.diagnostics.criterion.satisfied;
  j["mode"] = d.paired() ? "noma_paired" : "oma_fallback";
  j["delta_s"] = d.paired() ? nlohmann::ordered_json(d.allocation->delta_s()) : nullptr;
  j["rate_s_noma"] = d.paired() ? nlohmann::ordered_json(noma.strong) : nullptr;
  j["rate_w_noma"] = d.paired() ? nlohmann::ordered_json(noma.weak) : nullptr;
  j["rate_s_oma"] = oma.strong;
  j["rate_w_oma"] = oma.weak;
  j["utility_sum"] = u_sum;
  j["t_alpha"] = t_alpha;

  for (const auto& [key, value] : j.items()) {
    std::string text;
    if (value.is_null()) {
      text = "-";
    } else if (value.is_number_float()) {
      text = fmt(value.get<double>());
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "1" : "0";
    } else if (value.is_string()) {
      text = value.get<std::string>();
    } else {
      text = value.dump();
    }
    out << std::left << std::setw(16) << key << text << '\n';
  }
  if (!a.json_path.empty()) write_text(a.json_path, j.dump(2) + '\n');
  return kExitOk;
}

bool is_star(std::string_view token) { return token == "star" || token == "beta*"; }

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string t(text.substr(start, end - start));
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
    out.push_back(t);
    start = end + 1;
  }
  return out;
}

double number(const std::string& token, const char* flag) {
  try {
    return parse_double_list(token).at(0);
  } catch (const ConfigError&) {
    throw ConfigError(std::string("invalid value for ") + flag + ": '" + token + "'");
  }
}

std::vector<BetaSpec> beta_specs(std::string_view text) {
  std::vector<BetaSpec> out;
  for (const std::string& t : tokens(text)) {
    if (is_star(t)) {
      out.emplace_back(BetaStar{});
    } else {
      out.emplace_back(number(t, "--betas"));
    }
  }
  return out;
}

// Sweep values from --values or --from/--to/--steps. `star` resolves to
// `star_value` (only meaningful on the beta axis).
std::vector<BetaSpec> axis_values(const SweepArgs& a, std::optional<double> star_value) {
  const auto resolve = [&](const std::string& t, const char* flag) -> double {
    if (is_star(t)) {
      if (!star_value) throw ConfigError(std::string(flag) + ": 'star' is only valid on the beta axis");
      return *star_value;
    }
    return number(t, flag);
  };
  std::vector<BetaSpec> out;
  if (!a.values.empty()) {
    for (const std::string& t : tokens(a.values)) {
      if (is_star(t) && star_value) {
        out.emplace_back(BetaStar{});
      } else {
        out.emplace_back(resolve(t, "--values"));
      }
    }
    return out;
  }
  if (a.from.empty() || a.to.empty() || a.steps < 1) {
    throw ConfigError("empty sweep range: give --values or --from/--to with --steps >= 1");
  }
  const double lo = resolve(a.from, "--from");
  const double hi = resolve(a.to, "--to");
  for (int i = 0; i < a.steps; ++i) {
    out.emplace_back(a.steps == 1 ? lo : lo + (hi - lo) * i / (a.steps - 1));
  }
  return out;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const std::vector<ResultRow> rows = as_usage([&] {
    FairnessConfig cfg;
    cfg.tau = a.tau;
    cfg.validate();

    const auto need = [&](const std::optional<double>& v, const char* flag) {
      if (!v) throw ConfigError(std::string("--axis ") + a.axis + " requires " + flag);
      return *v;
    };
    std::vector<LinkPoint> links;
    std::vector<BetaSpec> betas = beta_specs(a.betas.empty() ? "0" : a.betas);
    std::vector<double> alphas;
    for (const std::string& t : tokens(a.alphas.empty() ? "1" : a.alphas)) {
      alphas.push_back(number(t, "--alphas"));
    }

    if (a.axis == "alpha" || a.axis == "beta") {
      const LinkPoint lp{need(a.gamma_s_db, "--gamma-s-db"), need(a.gamma_w_db, "--gamma-w-db")};
      links.push_back(lp);
      if (a.axis == "alpha") {
        alphas.clear();
        for (const BetaSpec& v : axis_values(a, std::nullopt)) alphas.push_back(std::get<double>(v));
      } else {
        const double star = beta_star(LinearSinr::from_db(lp.gamma_s_db),
                                      LinearSinr::from_db(lp.gamma_w_db));
        betas = axis_values(a, star);
      }
    } else if (a.axis == "gamma-s") {
      const double gw = need(a.gamma_w_db, "--gamma-w-db");
      for (const BetaSpec& v : axis_values(a, std::nullopt)) links.push_back({std::get<double>(v), gw});
    } else if (a.axis == "gamma-w") {
      const double gs = need(a.gamma_s_db, "--gamma-s-db");
      for (const BetaSpec& v : axis_values(a, std::nullopt)) links.push_back({gs, std::get<double>(v)});
    } else {
      throw ConfigError("--axis must be one of alpha, beta, gamma-s, gamma-w");
    }
    for (const BetaSpec& b : betas) {
      if (const double* v = std::get_if<double>(&b); v && !(*v >= 0.0 && *v <= 1.0)) {
        throw ConfigError("beta values must lie in [0, 1]");
      }
    }
    return emit_delta_sweep(links, betas, alphas, cfg);
  });
  if (rows.empty()) throw ConfigError("sweep produced no rows");

  fs::path csv = a.out;
  fs::path json = csv;
  json.replace_extension(".json");
  emit_campaign_csv(rows, csv);
  emit_campaign_json(rows, json);
  out << "wrote " << rows.size() << " rows to " << csv.string() << " and " << json.string() << '\n';
  return kExitOk;
}

int resolve_threads(const std::optional<int>& flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("NOMA_FAIR_THREADS"); env && *env) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("NOMA_FAIR_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  SimulationConfig cfg = a.config_path.empty() ? SimulationConfig{} : load_config(a.config_path);
  if (a.seed) cfg.network.seed = *a.seed;
  if (a.trials) cfg.network.trials = *a.trials;
  if (!a.strategies.empty()) cfg.strategies = parse_strategy_list(a.strategies);
  if (!a.alphas.empty()) cfg.alphas = parse_double_list(a.alphas);
  if (!a.betas.empty()) cfg.betas = parse_double_list(a.betas);
  cfg.validate();
  const int threads = resolve_threads(a.threads);

  const fs::path dir = a.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const std::vector<SweepPoint> sweep = cfg.sweep();
  const std::vector<CampaignPoint> points =
      run_campaign(cfg.network, sweep, cfg.strategies, cfg.fairness, threads);
  const std::vector<ResultRow> rows = rows_from_campaign(points);

  const fs::path csv = dir / "campaign.csv";
  const fs::path json = dir / "campaign.json";
  const fs::path manifest = dir / "manifest.txt";
  emit_campaign_csv(rows, csv);
  emit_campaign_json(rows, json);
  Manifest m{cfg, {{"csv", csv.string()}, {"json", json.string()}}};
  write_text(manifest, format_manifest(m));
  out << "wrote " << rows.size() << " rows from " << cfg.network.trials << " trials to "
      << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"alpha-fair NOMA pairing and power allocation toolkit", "nomafair"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  PairArgs pa;
  CLI::App* pair = app.add_subcommand("pair", "Analyse one strong/weak user pair");
  pair->add_option("--gamma-s-db", pa.gamma_s_db, "Strong user SINR (dB)")->required();
  pair->add_option("--gamma-w-db", pa.gamma_w_db, "Weak user SINR (dB)")->required();
  pair->add_option("--beta", pa.beta, "SIC imperfection in [0, 1]")->required();
  pair->add_option("--alpha", pa.alpha, "Fairness exponent (>= 0)")->required();
  pair->add_option("--tau", pa.tau, "Sub-optimal threshold on beta/beta*")->capture_default_str();
  pair->add_option("--solver", pa.solver, "Allocator")
      ->check(CLI::IsMember({"optimal", "suboptimal"}))
      ->capture_default_str();
  pair->add_option("--json", pa.json_path, "Also write the report as JSON");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep delta_s against one parameter");
  sweep->add_option("--axis", sa.axis, "alpha | beta | gamma-s | gamma-w")
      ->required()
      ->check(CLI::IsMember({"alpha", "beta", "gamma-s", "gamma-w"}));
  sweep->add_option("--from", sa.from, "Range start (beta axis accepts 'star')");
  sweep->add_option("--to", sa.to, "Range end (beta axis accepts 'star')");
  sweep->add_option("--steps", sa.steps, "Number of evenly spaced points");
  sweep->add_option("--values", sa.values, "Explicit comma-separated axis values");
  sweep->add_option("--alphas", sa.alphas, "Fixed alphas (default 1)");
  sweep->add_option("--betas", sa.betas, "Fixed betas, 'star' for beta* (default 0)");
  sweep->add_option("--gamma-s-db", sa.gamma_s_db, "Strong user SINR (dB)");
  sweep->add_option("--gamma-w-db", sa.gamma_w_db, "Weak user SINR (dB)");
  sweep->add_option("--tau", sa.tau, "Sub-optimal threshold")->capture_default_str();
  sweep->add_option("--out", sa.out, "CSV output path; JSON goes next to it")->required();

  SimulateArgs ma;
  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo network campaign");
  sim->add_option("--config", ma.config_path, "key = value config file");
  sim->add_option("--seed", ma.seed, "Master seed");
  sim->add_option("--trials", ma.trials, "Number of trials");
  sim->add_option("--strategies", ma.strategies, "Comma-separated strategy ids");
  sim->add_option("--alphas", ma.alphas, "Comma-separated alphas");
  sim->add_option("--betas", ma.betas, "Comma-separated betas");
  sim->add_option("--out-dir", ma.out_dir, "Output directory")->required();
  sim->add_option("--threads", ma.threads, "Worker threads (env NOMA_FAIR_THREADS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* sub : {pair, sweep, sim}) {
      if (sub->parsed()) target = sub;
    }
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = &app;
    for (CLI::App* sub : {pair, sweep, sim}) {
      if (sub->parsed()) target = sub;
    }
    err << "error: " << e.what() << "\n\n" << target->help();
    return kExitUsage;
  }

  try {
    if (pair->parsed()) return cmd_pair(pa, out);
    if (sweep->parsed()) return cmd_sweep(sa, out);
    return cmd_simulate(ma, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fatal: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace nomafair
