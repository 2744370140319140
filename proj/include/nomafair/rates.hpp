#pragma once

#include <string_view>

namespace nomafair {

/// Linear (not dB) signal-to-interference-plus-noise ratio. Always positive
/// and finite; the constructor throws DomainError otherwise.
class LinearSinr {
 public:
  explicit LinearSinr(double value);

  static LinearSinr from_db(double db);

  double value() const noexcept { return value_; }
  double db() const;

  friend bool operator==(const LinearSinr&, const LinearSinr&) = default;
  friend auto operator<=>(const LinearSinr&, const LinearSinr&) = default;

 private:
  double value_;
};

/// A strong/weak user pair sharing one subchannel, plus the residual SIC
/// imperfection at the strong user.
///
/// Invariants: gamma_s >= gamma_w, 0 <= beta <= 1. Equal SINRs are accepted;
/// such a pair is rejected later by the pairing criterion.
class PairLink {
 public:
  PairLink(LinearSinr gamma_s, LinearSinr gamma_w, double beta);

  LinearSinr gamma_s() const noexcept { return gamma_s_; }
  LinearSinr gamma_w() const noexcept { return gamma_w_; }
  double beta() const noexcept { return beta_; }

  PairLink with_beta(double beta) const { return {gamma_s_, gamma_w_, beta}; }

 private:
  LinearSinr gamma_s_;
  LinearSinr gamma_w_;
  double beta_;
};

enum class AllocationSource { Optimal, SubOptimal, UpperBound, LowerBound, NearFar };

std::string_view to_string(AllocationSource source);

/// Downlink power split. Only the strong share is stored; the weak share is
/// its complement so the two always sum to one.
class PowerAllocation {
 public:
  PowerAllocation(double delta_s, AllocationSource source);

  double delta_s() const noexcept { return delta_s_; }
  double delta_w() const noexcept { return 1.0 - delta_s_; }
  AllocationSource source() const noexcept { return source_; }

 private:
  double delta_s_;
  AllocationSource source_;
};

struct SinrPair {
  double strong;
  double weak;
};

struct RatePair {
  double strong;  // bits/s/Hz
  double weak;    // bits/s/Hz
};

/// Rate of a user on half the resources: 0.5 * log2(1 + gamma).
double oma_rate(double gamma);
inline double oma_rate(LinearSinr gamma) { return oma_rate(gamma.value()); }

/// OMA rates of both pair members.
RatePair oma_rates(const PairLink& link);

/// Post-superposition SINRs. The strong user sees residual interference
/// beta * (1 - delta_s) * gamma_s after imperfect cancellation; the weak user
/// treats the strong user's signal as noise.
SinrPair noma_sinrs(const PairLink& link, double delta_s);
inline SinrPair noma_sinrs(const PairLink& link, const PowerAllocation& alloc) {
  return noma_sinrs(link, alloc.delta_s());
}

/// log2(1 + sinr) for each member; no 1/2 factor since both reuse the full
/// subchannel.
RatePair noma_rates(const PairLink& link, double delta_s);
inline RatePair noma_rates(const PairLink& link, const PowerAllocation& alloc) {
  return noma_rates(link, alloc.delta_s());
}

}  // namespace nomafair
