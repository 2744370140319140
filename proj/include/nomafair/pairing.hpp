#pragma once

#include <optional>
#include <vector>

#include "nomafair/allocator.hpp"
#include "nomafair/fairness.hpp"
#include "nomafair/rates.hpp"

namespace nomafair {

/// A user's link to its serving base station on the shared subchannel.
struct UserChannel {
  int user_id = 0;
  int serving_bs_id = 0;
  LinearSinr gamma{1.0};
  double channel_gain = 0.0;  // |h|^2 to the serving station, pathloss times fading

  friend bool operator==(const UserChannel&, const UserChannel&) = default;
};

/// Users of one cell sharing a subchannel pool.
using CellPopulation = std::vector<UserChannel>;

struct UserPair {
  UserChannel strong;  // strong.gamma >= weak.gamma
  UserChannel weak;
};

struct NomaPair {
  UserChannel strong;
  UserChannel weak;
  AllocationDecision decision;
};

/// Every input user appears exactly once across `pairs` and `singles`.
struct PairingOutcome {
  std::vector<NomaPair> pairs;
  std::vector<UserChannel> singles;  // served OMA
};

/// Front/back matching of the population sorted by descending channel gain
/// (ties by user id): first with last, second with second-to-last, ... An odd
/// middle user is left unmatched. Each pair is oriented so that the member
/// with the higher SINR takes the strong role.
struct CandidateMatching {
  std::vector<UserPair> pairs;
  std::optional<UserChannel> unmatched;
};

CellPopulation sorted_by_gain(CellPopulation pop);

CandidateMatching candidate_pairs(const CellPopulation& pop);

/// Near-Far baseline: every candidate pair is served NOMA at delta_s =
/// delta_ub with no MSD or beta* gate.
PairingOutcome pair_near_far(const CellPopulation& pop, double beta,
                             const FairnessConfig& cfg = {});

enum class PairAllocator { Optimal, SubOptimal, UpperBound, LowerBound };

/// MSD-gated pairing: the same candidate pairs as Near-Far, each admitted only
/// if the chosen allocator returns a NOMA decision; rejected members and the
/// unmatched user are served OMA.
PairingOutcome pair_msd(const CellPopulation& pop, double beta, const FairnessConfig& cfg,
                        PairAllocator allocator);

}  // namespace nomafair
