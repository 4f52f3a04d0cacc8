// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "bppdist/geometry.hpp"
#include "bppdist/moment_value.hpp"

namespace bppdist {

enum class PathLoss {
  singular,  ///< g(x) = |x|^-alpha
  bounded,   ///< g(x) = min(1, |x|^-alpha)
};

PathLoss parse_path_loss(std::string_view name);
std::string_view to_string(PathLoss law);

/// Channel-access and link parameters shared by the network metrics.
struct MetricConfig {
  double p = 1.0;      ///< ALOHA transmit probability
  double alpha = 4.0;  ///< path-loss exponent
  double n0 = 0.0;     ///< noise power
  double theta = 1.0;  ///< SINR threshold
  PathLoss pathloss = PathLoss::singular;

  /// Throws DomainError unless 0 <= p <= 1, alpha > 0, n0 >= 0, theta > 0.
  void validate() const;
};

/// Mean energy E[R_n^alpha] to deliver a packet from the n-th neighbour.
MomentValue mean_hop_energy(const NetworkSpec& spec, std::int64_t n, double alpha);

/// Mean interference at the origin, p sum_n E[g(R_n)].
/// Singular law: N p d R^-alpha / (d - alpha), infinite for d <= alpha.
/// Bounded law (requires R > 1): (N p d / R^d) [1/d + (R^(d-alpha) - 1)/(d - alpha)],
/// with the d == alpha limit [1/d + ln R].
MomentValue mean_interference(const NetworkSpec& spec, const MetricConfig& cfg);

/// sum_{n=1}^k Gamma(n-x)/Gamma(n) = Gamma(k-x)/Gamma(k) (k-x)/(1-x), x < 1.
double gamma_ratio_partial_sum(std::int64_t k, double x);

/// Probability that the n-th neighbour's received power exceeds n0 * theta
/// in the absence of interference. Equals 1 for theta <= R^-alpha / n0 and
/// for n0 == 0.
double connectivity_prob(const NetworkSpec& spec, const MetricConfig& cfg, std::int64_t n);

/// Nearest-interferer lower bound on Pr(I > 1/theta) for a unit-power
/// transmitter at unit distance: p (1 - (1 - theta^(d/alpha)/R^d)^N) for
/// theta <= R^alpha, p beyond.
double outage_lower_bound(const NetworkSpec& spec, const MetricConfig& cfg);

}  // namespace bppdist
