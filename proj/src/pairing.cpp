#include "nomafair/pairing.hpp"

#include <algorithm>

#include "nomafair/bounds.hpp"

namespace nomafair {

namespace {

PairLink link_of(const UserPair& p, double beta) { return {p.strong.gamma, p.weak.gamma, beta}; }

AllocationDecision decide(const PairLink& link, const FairnessConfig& cfg, PairAllocator allocator) {
  switch (allocator) {
    case PairAllocator::Optimal: return solve_optimal(link, cfg);
    case PairAllocator::SubOptimal: return solve_suboptimal(link, cfg);
    case PairAllocator::UpperBound: return allocate_fixed_bound(link, BoundChoice::Upper, cfg);
    case PairAllocator::LowerBound: return allocate_fixed_bound(link, BoundChoice::Lower, cfg);
  }
  return solve_optimal(link, cfg);
}

}  // namespace

CellPopulation sorted_by_gain(CellPopulation pop) {
  std::stable_sort(pop.begin(), pop.end(), [](const UserChannel& a, const UserChannel& b) {
    if (a.channel_gain != b.channel_gain) return a.channel_gain > b.channel_gain;
    return a.user_id < b.user_id;
  });
  return pop;
}

CandidateMatching candidate_pairs(const CellPopulation& pop) {
  const CellPopulation sorted = sorted_by_gain(pop);
  CandidateMatching m;
  std::size_t front = 0;
  std::size_t back = sorted.size();
  while (back - front >= 2) {
    const UserChannel& a = sorted[front++];
    const UserChannel& b = sorted[--back];
    // Decoding order follows SINR; gain and SINR can disagree when the two
    // users see different interference.
    if (a.gamma >= b.gamma) {
      m.pairs.push_back({a, b});
    } else {
      m.pairs.push_back({b, a});
    }
  }
  if (back - front == 1) m.unmatched = sorted[front];
  return m;
}

PairingOutcome pair_near_far(const CellPopulation& pop, double beta, const FairnessConfig& cfg) {
  const CandidateMatching m = candidate_pairs(pop);
  PairingOutcome out;
  for (const UserPair& p : m.pairs) {
    const PairLink link = link_of(p, beta);
    const double delta_s = delta_upper_bound(link.gamma_w());
    out.pairs.push_back(
        {p.strong, p.weak, assign_allocation(link, delta_s, AllocationSource::NearFar, cfg)});
  }
  if (m.unmatched) out.singles.push_back(*m.unmatched);
  return out;
}

PairingOutcome pair_msd(const CellPopulation& pop, double beta, const FairnessConfig& cfg,
                        PairAllocator allocator) {
  const CandidateMatching m = candidate_pairs(pop);
  PairingOutcome out;
  for (const UserPair& p : m.pairs) {
    AllocationDecision d = decide(link_of(p, beta), cfg, allocator);
    if (d.paired()) {
      out.pairs.push_back({p.strong, p.weak, std::move(d)});
    } else {
      out.singles.push_back(p.strong);
      out.singles.push_back(p.weak);
    }
  }
  if (m.unmatched) out.singles.push_back(*m.unmatched);
  return out;
}

}  // namespace nomafair
