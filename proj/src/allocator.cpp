#include "nomafair/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nomafair/errors.hpp"
#include "nomafair/search.hpp"

namespace nomafair {

namespace {

struct Gate {
  DecisionDiagnostics diagnostics;
  bool admit;
};

DecisionDiagnostics diagnose(const PairLink& link, double beta_s) {
  const AllocationBounds bounds = allocation_bounds(link);
  const PairingCriterion criterion = pairing_criterion(link.gamma_s(), link.gamma_w());
  const double ratio = criterion.beta_star > 0.0 ? beta_s / criterion.beta_star
                                                 : std::numeric_limits<double>::infinity();
  return {bounds, criterion, ratio};
}

Gate gate(const PairLink& link, std::optional<double> worst_case_beta) {
  const double beta_s = worst_case_beta.value_or(link.beta());
  if (!(beta_s >= 0.0 && beta_s <= 1.0)) {
    throw DomainError("worst-case SIC imperfection must lie in [0, 1]");
  }
  Gate g{diagnose(link, beta_s), false};
  const PairingCriterion& c = g.diagnostics.criterion;
  // beta_s == beta* is admitted: the interval closes to the single point
  // delta_lb == delta_ub where both users get exactly their OMA rates.
  if (!c.satisfied || c.beta_star <= 0.0 || beta_s > c.beta_star) return g;

  if (g.diagnostics.bounds.width() < -kIntervalTolerance) {
    if (link.beta() <= c.beta_star) {
      throw ConsistencyError("pair passes the MSD and beta* gate but delta_lb=" +
                             std::to_string(g.diagnostics.bounds.delta_lb) +
                             " exceeds delta_ub=" + std::to_string(g.diagnostics.bounds.delta_ub));
    }
    return g;  // caller-supplied beta_s below beta*, link beta above it
  }
  g.admit = true;
  return g;
}

AllocationDecision fallback(const Gate& g) {
  return {DecisionMode::OmaFallback, std::nullopt, std::nullopt, g.diagnostics};
}

double pair_objective(const PairLink& link, double delta_s, double alpha) {
  const RatePair r = noma_rates(link, delta_s);
  return utility(r.strong, alpha) + utility(r.weak, alpha);
}

AllocationDecision paired(const PairLink& link, double delta_s, AllocationSource source,
                          const FairnessConfig& cfg, const DecisionDiagnostics& diagnostics) {
  PowerAllocation alloc(delta_s, source);
  return {DecisionMode::NomaPaired, alloc, pair_objective(link, delta_s, cfg.alpha), diagnostics};
}

// Degenerate interval: the single admissible point is delta_ub.
bool collapsed(const AllocationBounds& b) { return b.width() < kIntervalTolerance; }

}  // namespace

AllocationDecision solve_optimal(const PairLink& link, const FairnessConfig& cfg,
                                 std::optional<double> worst_case_beta) {
  cfg.validate();
  const Gate g = gate(link, worst_case_beta);
  if (!g.admit) return fallback(g);

  const AllocationBounds& b = g.diagnostics.bounds;
  if (collapsed(b)) return paired(link, b.delta_ub, AllocationSource::Optimal, cfg, g.diagnostics);

  // log T_alpha is a monotone transform of the utility sum and stays finite
  // for large alpha where r^(1-alpha) would overflow.
  const double alpha = cfg.alpha;
  const auto score = [&](double delta_s) {
    const RatePair r = noma_rates(link, delta_s);
    return log_alpha_throughput(r.strong, r.weak, alpha);
  };
  SearchOptions opts;
  opts.grid_points = cfg.grid_points;
  opts.x_tol = cfg.solver_tol;
  const SearchResult best = maximize_on_interval(score, b.delta_lb, b.delta_ub, opts);
  const double delta_s = std::clamp(best.x, b.delta_lb, b.delta_ub);
  return paired(link, delta_s, AllocationSource::Optimal, cfg, g.diagnostics);
}

AllocationDecision solve_suboptimal(const PairLink& link, const FairnessConfig& cfg,
                                    std::optional<double> worst_case_beta) {
  cfg.validate();
  const Gate g = gate(link, worst_case_beta);
  if (!g.admit) return fallback(g);

  const AllocationBounds& b = g.diagnostics.bounds;
  const bool small_imperfection = g.diagnostics.beta_ratio < cfg.tau;
  const bool use_lower = small_imperfection && cfg.alpha > 1.0 && !collapsed(b);
  return paired(link, use_lower ? b.delta_lb : b.delta_ub, AllocationSource::SubOptimal, cfg,
                g.diagnostics);
}

AllocationDecision allocate_fixed_bound(const PairLink& link, BoundChoice which,
                                        const FairnessConfig& cfg) {
  cfg.validate();
  const Gate g = gate(link, std::nullopt);
  if (!g.admit) return fallback(g);

  const AllocationBounds& b = g.diagnostics.bounds;
  const bool upper = which == BoundChoice::Upper;
  const double delta_s = (upper || collapsed(b)) ? b.delta_ub : b.delta_lb;
  return paired(link, delta_s, upper ? AllocationSource::UpperBound : AllocationSource::LowerBound,
                cfg, g.diagnostics);
}

AllocationDecision assign_allocation(const PairLink& link, double delta_s,
                                     AllocationSource source, const FairnessConfig& cfg) {
  cfg.validate();
  return paired(link, delta_s, source, cfg, diagnose(link, link.beta()));
}

}  // namespace nomafair
