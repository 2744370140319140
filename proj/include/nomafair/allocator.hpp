#pragma once

#include <optional>

#include "nomafair/bounds.hpp"
#include "nomafair/fairness.hpp"
#include "nomafair/rates.hpp"

namespace nomafair {

enum class DecisionMode { NomaPaired, OmaFallback };

struct DecisionDiagnostics {
  AllocationBounds bounds;
  PairingCriterion criterion;
  double beta_ratio;  // beta_s / beta*, +inf when beta* <= 0
};

/// Outcome of a power-allocation rule for one candidate pair. `allocation`
/// and `objective` are present iff mode == NomaPaired; `objective` is
/// utility(R_s) + utility(R_w) at the chosen split.
struct AllocationDecision {
  DecisionMode mode;
  std::optional<PowerAllocation> allocation;
  std::optional<double> objective;
  DecisionDiagnostics diagnostics;

  bool paired() const noexcept { return mode == DecisionMode::NomaPaired; }
};

enum class BoundChoice { Upper, Lower };

/// Maximizes utility(R_s) + utility(R_w) over [delta_lb, delta_ub] when the
/// pair passes the MSD criterion and beta_s <= beta*; OMA fallback otherwise.
/// `worst_case_beta` is the beta_s compared against beta*; it defaults to the
/// link's beta. Throws ConsistencyError if the gate passes but the bounds are
/// crossed.
AllocationDecision solve_optimal(const PairLink& link, const FairnessConfig& cfg,
                                 std::optional<double> worst_case_beta = std::nullopt);

/// Threshold rule: below tau * beta*, delta_lb for alpha > 1 and delta_ub
/// otherwise; at or above it, delta_ub for every alpha.
AllocationDecision solve_suboptimal(const PairLink& link, const FairnessConfig& cfg,
                                    std::optional<double> worst_case_beta = std::nullopt);

/// Baseline pinned to one bound, with the same MSD / beta* gate.
AllocationDecision allocate_fixed_bound(const PairLink& link, BoundChoice which,
                                        const FairnessConfig& cfg = {});

/// Ungated decision at a given split (used for Near-Far pairs).
AllocationDecision assign_allocation(const PairLink& link, double delta_s,
                                     AllocationSource source, const FairnessConfig& cfg);

}  // namespace nomafair
