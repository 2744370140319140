#pragma once

namespace nomafair {

/// Scheduler knobs shared by the allocators.
struct FairnessConfig {
  double alpha = 1.0;       // fairness exponent, >= 0
  double tau = 0.5;         // beta/beta* threshold of the sub-optimal rule
  double solver_tol = 1e-9; // absolute tolerance on delta_s
  int grid_points = 1000;   // coarse scan resolution before refinement

  /// Throws DomainError on an out-of-range field.
  void validate() const;
};

/// alpha-fair utility: x^(1-alpha)/(1-alpha), log(x) at alpha == 1, and x at
/// alpha == 0 (throughput limit).
double utility(double x, double alpha);

/// alpha-fair throughput of a pair: the power mean of exponent 1 - alpha of
/// the two rates, geometric mean at alpha == 1.
double alpha_throughput(double r_s, double r_w, double alpha);

/// log of alpha_throughput, evaluated without forming r^(1-alpha). It is a
/// strictly increasing function of utility(r_s) + utility(r_w) for fixed
/// alpha, so maximizing either gives the same allocation.
double log_alpha_throughput(double r_s, double r_w, double alpha);

}  // namespace nomafair
