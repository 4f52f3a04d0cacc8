// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/metrics.hpp"

#include <cmath>
#include <string>

#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/specfun.hpp"

namespace bppdist {

PathLoss parse_path_loss(std::string_view name) {
  if (name == "singular") return PathLoss::singular;
  if (name == "bounded") return PathLoss::bounded;
  throw DomainError("unknown path-loss law '" + std::string(name) +
                    "' (expected singular|bounded)");
}

std::string_view to_string(PathLoss law) {
  return law == PathLoss::singular ? "singular" : "bounded";
}

void MetricConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("MetricConfig: p must lie in [0, 1]");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("MetricConfig: alpha must be finite and > 0");
  if (!(n0 >= 0.0) || !std::isfinite(n0))
    throw DomainError("MetricConfig: n0 must be finite and >= 0");
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw DomainError("MetricConfig: theta must be finite and > 0");
}

MomentValue mean_hop_energy(const NetworkSpec& spec, std::int64_t n, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("mean_hop_energy: alpha must be > 0");
  return moment_rn(NthNeighborQuery(spec, n), alpha);
}

MomentValue mean_interference(const NetworkSpec& spec, const MetricConfig& cfg) {
  cfg.validate();
  const double d = spec.dimension();
  const double r = spec.radius();
  const double np = static_cast<double>(spec.nodes()) * cfg.p;
  if (cfg.pathloss == PathLoss::singular) {
    if (d <= cfg.alpha) return MomentValue::infinite();
    return MomentValue::finite(np * d * std::pow(r, -cfg.alpha) / (d - cfg.alpha));
  }
  if (!(r > 1.0))
    throw DomainError("mean_interference: bounded path loss requires R > 1");
  // (R^(d-alpha) - 1)/(d - alpha) via expm1 keeps the alpha -> d limit smooth.
  const double gap = d - cfg.alpha;
  const double ln_r = std::log(r);
  const double far_field = gap == 0.0 ? ln_r : std::expm1(gap * ln_r) / gap;
  return MomentValue::finite(np * d / std::pow(r, d) * (1.0 / d + far_field));
}

double gamma_ratio_partial_sum(std::int64_t k, double x) {
  if (k < 1) throw DomainError("gamma_ratio_partial_sum: k must be >= 1");
  if (!(x < 1.0)) throw DomainError("gamma_ratio_partial_sum: requires x < 1");
  const auto kd = static_cast<double>(k);
  return std::exp(specfun::ln_pochhammer_rising(kd, -x)) * (kd - x) / (1.0 - x);
}

double connectivity_prob(const NetworkSpec& spec, const MetricConfig& cfg, std::int64_t n) {
  cfg.validate();
  const NthNeighborQuery query(spec, n);
  if (cfg.n0 == 0.0) return 1.0;
  const double required = cfg.n0 * cfg.theta;  // received power must exceed this
  if (cfg.pathloss == PathLoss::bounded && required >= 1.0) return 0.0;
  // Connected iff R_n < (n0 theta)^(-1/alpha).
  const double reach = std::pow(required, -1.0 / cfg.alpha);
  if (reach >= spec.radius()) return 1.0;
  return cdf_rn(query, reach);
}

double outage_lower_bound(const NetworkSpec& spec, const MetricConfig& cfg) {
  cfg.validate();
  // Outage whenever the nearest node transmits with path gain above 1/theta,
  // i.e. R_1 < theta^(1/alpha).
  if (cfg.pathloss == PathLoss::bounded && cfg.theta <= 1.0) return 0.0;
  const double reach = std::pow(cfg.theta, 1.0 / cfg.alpha);
  if (reach >= spec.radius()) return cfg.p;
  return cfg.p * (1.0 - void_probability(spec, reach));
}

}  // namespace bppdist
