#pragma once

#include "nomafair/rates.hpp"

namespace nomafair {

// An interval narrower than this is treated as empty (absorbs rounding at the
// closing point beta == beta*).
inline constexpr double kIntervalTolerance = 1e-12;

/// Admissible strong-user power fractions. Both ends give rate equality with
/// OMA: the weak user at delta_ub, the strong user at delta_lb.
struct AllocationBounds {
  double delta_lb;
  double delta_ub;
  bool feasible;  // delta_ub - delta_lb >= kIntervalTolerance

  double width() const noexcept { return delta_ub - delta_lb; }
};

struct PairingCriterion {
  double msd_threshold;  // linear SINR difference the pair must exceed
  double beta_star;      // may be negative; reported as-is
  bool satisfied;        // gamma_s - gamma_w > msd_threshold
};

/// Largest strong-user share keeping the weak user at or above its OMA rate:
/// (sqrt(1 + gamma_w) - 1) / gamma_w, in (0, 1/2].
double delta_upper_bound(LinearSinr gamma_w);

/// Smallest strong-user share keeping the strong user at or above its OMA
/// rate under SIC imperfection beta. Strictly increasing in beta.
double delta_lower_bound(LinearSinr gamma_s, double beta);

/// Minimum SINR difference threshold. A pair qualifies for NOMA when
/// gamma_s - gamma_w exceeds it.
double msd_threshold(LinearSinr gamma_s, LinearSinr gamma_w);

bool msd_satisfied(LinearSinr gamma_s, LinearSinr gamma_w);

/// Largest SIC imperfection for which delta_lb < delta_ub. Throws
/// SingularInputError when the denominator vanishes numerically.
double beta_star(LinearSinr gamma_s, LinearSinr gamma_w);

AllocationBounds allocation_bounds(const PairLink& link);

PairingCriterion pairing_criterion(LinearSinr gamma_s, LinearSinr gamma_w);

}  // namespace nomafair
