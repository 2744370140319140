#include "nomafair/bounds.hpp"

#include <cmath>
#include <string>

#include "nomafair/errors.hpp"

namespace nomafair {

namespace {

// sqrt(1 + x) - 1 without cancellation.
double sqrt1pm1(double x) { return x / (std::sqrt(1.0 + x) + 1.0); }

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("SIC imperfection must lie in [0, 1], got " + std::to_string(beta));
  }
}

}  // namespace

double delta_upper_bound(LinearSinr gamma_w) {
  // (sqrt(1+g) - 1) / g == 1 / (sqrt(1+g) + 1); the latter keeps the g -> 0
  // limit of 1/2.
  return 1.0 / (std::sqrt(1.0 + gamma_w.value()) + 1.0);
}

double delta_lower_bound(LinearSinr gamma_s, double beta) {
  check_beta(beta);
  const double g = gamma_s.value();
  const double root = std::sqrt(1.0 + g);
  // (1 + b g)(root - 1) / (g (1 + b root - b)) with (root - 1)/g folded into
  // 1/(root + 1).
  return (1.0 + beta * g) / ((root + 1.0) * (1.0 + beta * sqrt1pm1(g)));
}

double msd_threshold(LinearSinr gamma_s, LinearSinr gamma_w) {
  const double gs = gamma_s.value();
  const double root_s = std::sqrt(1.0 + gs);
  const double root_w = std::sqrt(1.0 + gamma_w.value());
  return gs - sqrt1pm1(gamma_w.value()) * (root_s * root_w + 1.0) / root_w;
}

bool msd_satisfied(LinearSinr gamma_s, LinearSinr gamma_w) {
  return gamma_s.value() - gamma_w.value() > msd_threshold(gamma_s, gamma_w);
}

double beta_star(LinearSinr gamma_s, LinearSinr gamma_w) {
  const double gs = gamma_s.value();
  const double gw = gamma_w.value();
  const double root_w = std::sqrt(1.0 + gw);
  const double root_s_m1 = sqrt1pm1(gs);
  const double root_w_m1 = sqrt1pm1(gw);
  // gw - gs + gs*root_w - gw*root_s, regrouped to avoid cancellation.
  const double numerator = gs * root_w_m1 - gw * root_s_m1;
  // gw - root_w + 1 == root_w * (root_w - 1)
  const double denominator = gs * root_s_m1 * (root_w * root_w_m1);
  if (!(denominator > 0.0) || !std::isfinite(denominator)) {
    throw SingularInputError("beta* denominator vanishes for gamma_s=" + std::to_string(gs) +
                             ", gamma_w=" + std::to_string(gw));
  }
  return numerator / denominator;
}

AllocationBounds allocation_bounds(const PairLink& link) {
  const double lb = delta_lower_bound(link.gamma_s(), link.beta());
  const double ub = delta_upper_bound(link.gamma_w());
  return {lb, ub, ub - lb >= kIntervalTolerance};
}

PairingCriterion pairing_criterion(LinearSinr gamma_s, LinearSinr gamma_w) {
  const double threshold = msd_threshold(gamma_s, gamma_w);
  return {threshold, beta_star(gamma_s, gamma_w),
          gamma_s.value() - gamma_w.value() > threshold};
}

}  // namespace nomafair
