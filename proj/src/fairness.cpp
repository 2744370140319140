#include "nomafair/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nomafair/errors.hpp"

namespace nomafair {

namespace {

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw DomainError("fairness exponent must be finite and >= 0, got " + std::to_string(alpha));
  }
}

void check_rate(double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw DomainError("rate must be positive and finite, got " + std::to_string(r));
  }
}

}  // namespace

void FairnessConfig::validate() const {
  check_alpha(alpha);
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");
  if (!(solver_tol > 0.0) || !std::isfinite(solver_tol)) {
    throw DomainError("solver tolerance must be positive");
  }
  if (grid_points < 2) throw DomainError("solver grid needs at least 2 points");
}

double utility(double x, double alpha) {
  check_alpha(alpha);
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("utility is unbounded below at x=" + std::to_string(x));
  }
  if (alpha == 0.0) return x;
  if (alpha == 1.0) return std::log(x);
  return std::pow(x, 1.0 - alpha) / (1.0 - alpha);
}

double log_alpha_throughput(double r_s, double r_w, double alpha) {
  check_alpha(alpha);
  check_rate(r_s);
  check_rate(r_w);
  const double ls = std::log(r_s);
  const double lw = std::log(r_w);
  if (alpha == 1.0) return 0.5 * (ls + lw);
  // log( (e^(p ls) + e^(p lw)) / 2 ) / p with p = 1 - alpha, shifted by the
  // larger log-rate so the exponentials stay in range. expm1/log1p keep the
  // p -> 0 limit accurate.
  const double p = 1.0 - alpha;
  const double m = (p > 0.0) ? std::max(ls, lw) : std::min(ls, lw);
  const double mean_excess = 0.5 * (std::expm1(p * (ls - m)) + std::expm1(p * (lw - m)));
  return m + std::log1p(mean_excess) / p;
}

double alpha_throughput(double r_s, double r_w, double alpha) {
  return std::exp(log_alpha_throughput(r_s, r_w, alpha));
}

}  // namespace nomafair
