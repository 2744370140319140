// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--cli PATH] [--workdir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nomafair/allocator.hpp"
#include "nomafair/bounds.hpp"
#include "nomafair/netsim.hpp"
#include "nomafair/rates.hpp"
#include "oracles.hpp"
#include "sampling.hpp"

using namespace nomafair;
namespace fs = std::filesystem;

namespace {

struct Context {
  std::string cli;
  fs::path workdir;
};

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

constexpr double kNine = 7.943;
constexpr double kTwo = 1.585;

PairLink reference(double beta) { return PairLink(LinearSinr(kNine), LinearSinr(kTwo), beta); }
double reference_beta_star() { return beta_star(LinearSinr(kNine), LinearSinr(kTwo)); }

FairnessConfig fair(double alpha, double tau = 0.5) {
  FairnessConfig f;
  f.alpha = alpha;
  f.tau = tau;
  return f;
}

// Pair passing the criterion with beta* in (0, 1) and beta uniform in [0, beta*).
PairLink feasible_link(sampling::Sampler& s) {
  for (;;) {
    const auto [gs, gw] = sampling::draw_pair(s);
    const LinearSinr a(gs), b(gw);
    if (!msd_satisfied(a, b)) continue;
    const double bs = beta_star(a, b);
    if (!(bs > 0.0 && bs < 1.0)) continue;
    return PairLink(a, b, s.uniform(0.0, bs));
  }
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * double(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (v[hi] - v[lo]) * (pos - double(lo));
}

Outcome bound_correctness(const Context&) {
  Stopwatch clock;
  sampling::Sampler s(101);
  double worst_ub = 0.0, worst_lb = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto [gs, gw] = sampling::draw_pair(s);
    const double beta = s.uniform(0.0, 0.2);
    worst_ub = std::max(worst_ub, std::abs(delta_upper_bound(LinearSinr(gw)) -
                                           oracle::weak_equality_root(gw)));
    worst_lb = std::max(worst_lb, std::abs(delta_lower_bound(LinearSinr(gs), beta) -
                                           oracle::strong_equality_root(gs, beta)));
  }
  const double t = clock.seconds();
  return {worst_ub < 1e-8 && worst_lb < 1e-8 && t < 10.0,
          fmt("max|d ub|=%.2e max|d lb|=%.2e over 1e4 links, %.2f s", worst_ub, worst_lb, t)};
}

Outcome msd_equivalence(const Context&) {
  sampling::Sampler s(102);
  const int n = 10000;
  int agree = 0, far = 0;
  double worst_margin = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [gs, gw] = sampling::draw_pair(s);
    const bool msd = msd_satisfied(LinearSinr(gs), LinearSinr(gw));
    const bool brute = oracle::grid_feasible(gs, gw, 0.0, 10000);
    if (msd == brute) {
      ++agree;
      continue;
    }
    const double margin = std::abs(gs - gw - msd_threshold(LinearSinr(gs), LinearSinr(gw)));
    worst_margin = std::max(worst_margin, margin);
    if (margin >= 1e-6) ++far;
  }
  const double rate = double(agree) / n;
  return {rate >= 0.999 && far == 0,
          fmt("agreement %.2f%% (%d/%d); %d disagreements farther than 1e-6 from the threshold, "
              "largest %.3g",
              100.0 * rate, agree, n, far, worst_margin)};
}

Outcome beta_star_closure(const Context&) {
  sampling::Sampler s(103);
  double worst = 0.0, worst_independent = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PairLink l = feasible_link(s);
    const LinearSinr gs = l.gamma_s(), gw = l.gamma_w();
    const double ub = delta_upper_bound(gw);
    const double root =
        oracle::bisect([&](double b) { return delta_lower_bound(gs, b) - ub; }, 0.0, 1.0);
    const double closed = beta_star(gs, gw);
    worst = std::max(worst, std::abs(root - closed));
    worst_independent =
        std::max(worst_independent, std::abs(oracle::closing_beta(gs.value(), gw.value()) - closed));
  }
  return {worst < 1e-8 && worst_independent < 1e-8,
          fmt("max|d beta|=%.2e (bound bisection), %.2e (rate-equality bisection) over 1e3 pairs",
              worst, worst_independent)};
}

Outcome optimizer_oracle(const Context&) {
  Stopwatch clock;
  sampling::Sampler s(104);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PairLink l = feasible_link(s);
    const double alpha = s.log_uniform(0.1, 20.0);
    const AllocationDecision d = solve_optimal(l, fair(alpha));
    if (!d.paired()) return {false, fmt("instance %d was not paired", i)};
    const AllocationBounds& b = d.diagnostics.bounds;
    const double g = oracle::grid_max_utility(l.gamma_s().value(), l.gamma_w().value(),
                                                       l.beta(), alpha, b.delta_lb, b.delta_ub,
                                                       1000000);
    worst = std::max(worst, std::abs(*d.objective - g));
  }
  const double t = clock.seconds();
  return {worst < 1e-6 && t < 60.0,
          fmt("max|objective - grid|=%.2e over 1e3 instances, %.1f s", worst, t)};
}

Outcome lower_bound_regime(const Context&) {
  const double lb = allocation_bounds(reference(0.0)).delta_lb;
  bool pass = true;
  std::string detail = fmt("delta_lb=%.6f;", lb);
  for (double alpha : {2.5, 3.0, 5.0, 20.0}) {
    const double ds = solve_optimal(reference(0.0), fair(alpha)).allocation->delta_s();
    pass = pass && std::abs(ds - lb) < 1e-3;
    detail += fmt(" a=%g:%.6f", alpha, ds);
  }
  return {pass, detail};
}

Outcome upper_bound_regime_low_alpha(const Context&) {
  const double ub = allocation_bounds(reference(0.0)).delta_ub;
  const double bs = reference_beta_star();
  bool pass = true;
  std::string detail = fmt("delta_ub=%.6f;", ub);
  for (double alpha : {0.3, 0.6, 0.9}) {
    for (double frac : {0.0, 0.5, 0.9}) {
      const double ds = solve_optimal(reference(frac * bs), fair(alpha)).allocation->delta_s();
      const bool ok = std::abs(ds - ub) < 1e-3;
      pass = pass && ok;
      detail += fmt(" a=%g,b=%.1fb*:%+.4f%s", alpha, frac, ds - ub, ok ? "" : "!");
    }
  }
  return {pass, detail};
}

Outcome upper_bound_regime_closing(const Context&) {
  const double ub = allocation_bounds(reference(0.0)).delta_ub;
  const double beta = reference_beta_star() * (1 - 1e-6);
  bool pass = true;
  std::string detail = fmt("delta_ub=%.6f;", ub);
  for (double alpha : {0.5, 1.0, 3.0, 25.0}) {
    const AllocationDecision d = solve_optimal(reference(beta), fair(alpha));
    const double ds = d.paired() ? d.allocation->delta_s() : NAN;
    pass = pass && std::abs(ds - ub) < 1e-3;
    detail += fmt(" a=%g:%.6f", alpha, ds);
  }
  return {pass, detail};
}

Outcome suboptimal_fidelity(const Context&) {
  sampling::Sampler s(108);
  std::vector<double> gaps;
  for (int i = 0; i < 1000; ++i) {
    const PairLink l = feasible_link(s);
    const FairnessConfig f = fair(s.log_uniform(0.3, 35.0), 0.5);
    const AllocationDecision opt = solve_optimal(l, f);
    const AllocationDecision sub = solve_suboptimal(l, f);
    const RatePair ro = noma_rates(l, *opt.allocation);
    const RatePair rs = noma_rates(l, *sub.allocation);
    const double t_opt = alpha_throughput(ro.strong, ro.weak, f.alpha);
    const double t_sub = alpha_throughput(rs.strong, rs.weak, f.alpha);
    gaps.push_back((t_opt - t_sub) / t_opt);
  }
  const double median = quantile(gaps, 0.5);
  const auto within = std::count_if(gaps.begin(), gaps.end(), [](double g) { return g < 0.01; });
  return {median < 0.05,
          fmt("relative gap median=%.2e p25=%.2e p75=%.2e p90=%.2e p99=%.2e max=%.2e min=%.2e; "
              "%ld/1000 below 1%%",
              median, quantile(gaps, 0.25), quantile(gaps, 0.75), quantile(gaps, 0.9),
              quantile(gaps, 0.99), *std::max_element(gaps.begin(), gaps.end()),
              *std::min_element(gaps.begin(), gaps.end()), long(within))};
}

int campaign_threads() { return int(std::max(1u, std::thread::hardware_concurrency())); }

using Table = std::map<std::tuple<double, double, Strategy, std::string>, double>;

Table campaign(const std::vector<SweepPoint>& sweep, const std::vector<Strategy>& strategies) {
  NetworkConfig cfg;  // 25 BS/km^2, 120 users/km^2, 500 trials, seed 1
  Table t;
  for (const CampaignPoint& p :
       run_campaign(cfg, sweep, strategies, FairnessConfig{}, campaign_threads())) {
    for (const auto& [name, m] : p.metrics) t[{p.alpha, p.beta, p.strategy, name}] = m.mean;
  }
  return t;
}

Outcome monte_carlo_trend(const Context&) {
  Stopwatch clock;
  std::vector<SweepPoint> sweep;
  for (int k = 0; k <= 10; ++k) sweep.push_back({1.0, k / 100.0});
  const std::vector<Strategy> strategies{Strategy::Optimal, Strategy::SubOptimal,
                                         Strategy::NearFar, Strategy::Oma};
  const Table t = campaign(sweep, strategies);
  const auto T = [&](double beta, Strategy s) { return t.at({1.0, beta, s, "t_alpha"}); };
  double crossing = NAN;
  std::string curve;
  for (const SweepPoint& p : sweep) {
    curve += fmt(" %.2f:%.4f", p.beta, T(p.beta, Strategy::NearFar));
    if (p.beta > 0 && std::isnan(crossing) && T(p.beta, Strategy::NearFar) < T(p.beta, Strategy::Oma))
      crossing = p.beta;
  }
  bool near_zero_ok = true;
  for (double beta : {0.0, 0.01}) {
    near_zero_ok = near_zero_ok && T(beta, Strategy::Optimal) >= T(beta, Strategy::Oma) &&
                   T(beta, Strategy::SubOptimal) >= T(beta, Strategy::Oma);
  }
  const double secs = clock.seconds();
  return {!std::isnan(crossing) && near_zero_ok && secs < 300.0,
          fmt("500 trials; OMA=%.4f opt(0)=%.4f sub(0)=%.4f; near-far first below OMA at beta=%g; "
              "%.0f s;",
              T(0.0, Strategy::Oma), T(0.0, Strategy::Optimal), T(0.0, Strategy::SubOptimal),
              crossing, secs) +
              " near-far:" + curve};
}

Outcome mur_trend(const Context&) {
  std::vector<SweepPoint> sweep;
  for (double alpha : {1.0, 2.0, 5.0, 20.0})
    for (double beta : {0.01, 0.06}) sweep.push_back({alpha, beta});
  const std::vector<Strategy> strategies{Strategy::Optimal, Strategy::SubOptimal,
                                         Strategy::NearFar, Strategy::Oma};
  const Table t = campaign(sweep, strategies);
  bool msd_ok = true, nf_ok = true;
  double worst_margin = HUGE_VAL;
  std::string nf;
  for (const SweepPoint& p : sweep) {
    const auto at = [&](Strategy s, const char* m) { return t.at({p.alpha, p.beta, s, m}); };
    for (Strategy s : {Strategy::Optimal, Strategy::SubOptimal}) {
      for (const char* m : {"mur_strong", "mur_weak"}) {
        const double margin = at(s, m) - at(Strategy::Oma, m);
        worst_margin = std::min(worst_margin, margin);
        msd_ok = msd_ok && margin >= -1e-9;
      }
    }
    if (p.beta == 0.06) {
      const double a = at(Strategy::NearFar, "mur_strong"), b = at(Strategy::Oma, "mur_strong");
      nf_ok = nf_ok && a < b;
      if (p.alpha == 1.0) nf = fmt("near-far strong MUR %.4f vs OMA %.4f at beta=0.06", a, b);
    }
  }
  return {msd_ok && nf_ok,
          fmt("optimal/suboptimal minus OMA MUR >= %.3g (%s); ", worst_margin,
              msd_ok ? "ok" : "below") +
              nf + (nf_ok ? "" : " (near-far not below OMA)")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no --cli path given"};
  const fs::path dir = ctx.workdir / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto simulate = [&](const fs::path& out, int threads) {
    const std::string cmd = "\"" + ctx.cli + "\" simulate --seed 1 --trials 40 --threads " +
                            std::to_string(threads) + " --out-dir \"" + out.string() +
                            "\" > /dev/null";
    return std::system(cmd.c_str()) == 0;
  };
  const char* files[] = {"campaign.csv", "campaign.json", "manifest.txt"};
  if (!simulate(dir / "a", 1) || !simulate(dir / "b", 1)) return {false, "simulate failed"};
  const bool repeat = slurp(dir / "a" / "campaign.csv") == slurp(dir / "b" / "campaign.csv");
  std::map<std::string, std::string> single;
  for (const char* f : files) single[f] = slurp(dir / "a" / f);
  if (!simulate(dir / "a", 4)) return {false, "simulate --threads 4 failed"};
  bool threads_same = true;
  for (const char* f : files) threads_same = threads_same && single[f] == slurp(dir / "a" / f);
  return {repeat && threads_same && !single["campaign.csv"].empty(),
          fmt("repeat run CSV %s; threads 1 vs 4: all artifacts %s",
              repeat ? "identical" : "DIFFERS", threads_same ? "identical" : "DIFFER")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(const Context&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "bound correctness", bound_correctness},
      {2, "msd equivalence", msd_equivalence},
      {3, "beta* closure", beta_star_closure},
      {4, "optimizer oracle", optimizer_oracle},
      {5, "lower-bound regime (alpha > 2)", lower_bound_regime},
      {6, "upper-bound regime (alpha < 1, beta < beta*)", upper_bound_regime_low_alpha},
      {7, "upper-bound regime (beta -> beta*)", upper_bound_regime_closing},
      {8, "sub-optimal fidelity", suboptimal_fidelity},
      {9, "monte carlo t_alpha trend", monte_carlo_trend},
      {10, "mean user rate trend", mur_trend},
      {11, "determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.workdir = fs::temp_directory_path() / "nomafair_acceptance";
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--cli" && i + 1 < argc) {
      ctx.cli = argv[++i];
    } else if (a == "--workdir" && i + 1 < argc) {
      ctx.workdir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--only N] [--cli PATH] [--workdir DIR]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] C%d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
