#include "nomafair/rates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nomafair/errors.hpp"
#include "nomafair/units.hpp"

namespace nomafair {

namespace {

void check_fraction(double delta_s) {
  if (!(delta_s > 0.0 && delta_s < 1.0)) {
    throw DomainError("power fraction must lie in (0, 1), got " + std::to_string(delta_s));
  }
}

// log2(1 + x) without cancellation for small x.
double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

LinearSinr::LinearSinr(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError("linear SINR must be positive and finite, got " + std::to_string(value));
  }
}

LinearSinr LinearSinr::from_db(double db) {
  if (!std::isfinite(db)) throw DomainError("SINR in dB must be finite");
  return LinearSinr(db_to_linear(db));
}

double LinearSinr::db() const { return linear_to_db(value_); }

PairLink::PairLink(LinearSinr gamma_s, LinearSinr gamma_w, double beta)
    : gamma_s_(gamma_s), gamma_w_(gamma_w), beta_(beta) {
  if (gamma_s.value() < gamma_w.value()) {
    throw DomainError("strong user SINR must not be below weak user SINR");
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("SIC imperfection must lie in [0, 1], got " + std::to_string(beta));
  }
}

std::string_view to_string(AllocationSource source) {
  switch (source) {
    case AllocationSource::Optimal: return "optimal";
    case AllocationSource::SubOptimal: return "suboptimal";
    case AllocationSource::UpperBound: return "upper_bound";
    case AllocationSource::LowerBound: return "lower_bound";
    case AllocationSource::NearFar: return "near_far";
  }
  return "unknown";
}

PowerAllocation::PowerAllocation(double delta_s, AllocationSource source)
    : delta_s_(delta_s), source_(source) {
  check_fraction(delta_s);
}

double oma_rate(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw DomainError("OMA rate needs a positive finite SINR, got " + std::to_string(gamma));
  }
  return 0.5 * log2_1p(gamma);
}

RatePair oma_rates(const PairLink& link) {
  return {oma_rate(link.gamma_s()), oma_rate(link.gamma_w())};
}

SinrPair noma_sinrs(const PairLink& link, double delta_s) {
  check_fraction(delta_s);
  const double gs = link.gamma_s().value();
  const double gw = link.gamma_w().value();
  const double delta_w = 1.0 - delta_s;
  return {delta_s * gs / (1.0 + link.beta() * delta_w * gs),
          delta_w * gw / (1.0 + delta_s * gw)};
}

RatePair noma_rates(const PairLink& link, double delta_s) {
  const auto [strong, weak] = noma_sinrs(link, delta_s);
  return {log2_1p(strong), log2_1p(weak)};
}

}  // namespace nomafair
