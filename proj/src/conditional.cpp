// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"

namespace bppdist {
namespace {

void check_rank_and_radius(const NetworkSpec& spec, const BeaconCondition& cond,
                           std::int64_t n, double r, const char* fn) {
  cond.validate(spec);
  if (n < 1 || n > spec.nodes())
    throw DomainError(std::string(fn) + ": rank n must satisfy 1 <= n <= N");
  if (n == cond.rank)
    throw DomainError(std::string(fn) +
                      ": n == k is degenerate (point mass at the beacon distance s)");
  if (!(r >= 0.0 && r <= spec.radius()))
    throw DomainError(std::string(fn) + ": r must lie in [0, R]");
}

// Inner branch as an unconditional rank-n query: k-1 nodes in a ball of radius s.
NthNeighborQuery inner_query(const NetworkSpec& spec, const BeaconCondition& cond,
                             std::int64_t n) {
  return NthNeighborQuery(NetworkSpec(spec.dimension(), cond.distance, cond.rank - 1), n);
}

struct ShellCoordinate {
  double q;
  double one_minus_q;
  double shell_volume;  // R^d - s^d
};

ShellCoordinate shell_coordinate(const NetworkSpec& spec, const BeaconCondition& cond,
                                 double r) {
  const int d = spec.dimension();
  const double sd = std::pow(cond.distance, d);
  const double shell = std::pow(spec.radius(), d) - sd;
  const double q = (std::pow(r, d) - sd) / shell;
  const double omq = (std::pow(spec.radius(), d) - std::pow(r, d)) / shell;
  return {std::clamp(q, 0.0, 1.0), std::clamp(omq, 0.0, 1.0), shell};
}

}  // namespace

void BeaconCondition::validate(const NetworkSpec& spec) const {
  if (rank < 1 || rank > spec.nodes())
    throw DomainError("BeaconCondition: k must satisfy 1 <= k <= N");
  if (!(distance > 0.0 && distance < spec.radius()))
    throw DomainError("BeaconCondition: s must lie in (0, R)");
}

double cond_pdf(const NetworkSpec& spec, const BeaconCondition& cond, std::int64_t n,
                double r) {
  check_rank_and_radius(spec, cond, n, r, "cond_pdf");
  if (n < cond.rank) {
    if (r > cond.distance) return 0.0;
    return pdf_rn(inner_query(spec, cond, n), r);
  }
  if (r < cond.distance) return 0.0;
  const auto [q, omq, shell] = shell_coordinate(spec, cond, r);
  const int d = spec.dimension();
  const auto a = static_cast<double>(n - cond.rank);
  const auto b = static_cast<double>(spec.nodes() - n + 1);
  const double jacobian = d * std::pow(r, d - 1) / shell;
  const MomentValue density = specfun::beta_density(q, a, b);
  // Only reachable at q = 0 or 1 with a or b < 1, which integer ranks exclude.
  return jacobian * density.value();
}

double cond_cdf(const NetworkSpec& spec, const BeaconCondition& cond, std::int64_t n,
                double r) {
  check_rank_and_radius(spec, cond, n, r, "cond_cdf");
  if (n < cond.rank) {
    if (r >= cond.distance) return 1.0;
    return cdf_rn(inner_query(spec, cond, n), r);
  }
  if (r <= cond.distance) return 0.0;
  const auto [q, omq, shell] = shell_coordinate(spec, cond, r);
  const auto a = static_cast<double>(n - cond.rank);
  const auto b = static_cast<double>(spec.nodes() - n + 1);
  return specfun::reg_inc_beta_pair(q, omq, a, b).first;
}

double cond_pdf_given_nearest(const NetworkSpec& spec, double s, std::int64_t n, double r) {
  if (n < 2) throw DomainError("cond_pdf_given_nearest: n must be >= 2");
  return cond_pdf(spec, BeaconCondition{1, s}, n, r);
}

MomentValue cond_moment(const NetworkSpec& spec, const BeaconCondition& cond,
                        std::int64_t n, double gamma, const specfun::QuadratureSpec& quad) {
  cond.validate(spec);
  if (!std::isfinite(gamma)) throw DomainError("cond_moment: gamma must be finite");
  if (n < 1 || n > spec.nodes())
    throw DomainError("cond_moment: rank n must satisfy 1 <= n <= N");
  if (n == cond.rank) return MomentValue::finite(std::pow(cond.distance, gamma));
  const bool inner = n < cond.rank;
  if (inner && static_cast<double>(n) + gamma / spec.dimension() <= 0.0)
    return MomentValue::infinite();
  // Integrate over the branch's volume fraction v ~ Beta(a, b), which keeps
  // the integrand finite at both ends and well scaled for any s in (0, R).
  const double d = spec.dimension();
  const double shift = gamma / d;
  const double sd = std::pow(cond.distance, d);
  const double span = std::pow(spec.radius(), d) - sd;
  const double a = static_cast<double>(inner ? n : n - cond.rank);
  const double b = static_cast<double>(inner ? cond.rank - n : spec.nodes() - n + 1);
  auto integrand = [&](double v) {
    if (!(v > 0.0 && v < 1.0)) return 0.0;
    // r^d = s^d v (inner) or s^d + v (R^d - s^d) (outer)
    const double ln_rd = inner ? std::log(sd) + std::log(v) : std::log(sd + v * span);
    return std::exp(shift * ln_rd + specfun::ln_beta_kernel(v, 1.0 - v, a, b) - std::log(v) -
                    std::log1p(-v));
  };
  return MomentValue::finite(specfun::integrate_checked(integrand, 0.0, 1.0, quad));
}

MomentValue cond_moment_inner_closed_form(const NetworkSpec& spec,
                                          const BeaconCondition& cond, std::int64_t n,
                                          double gamma, InnerMomentDenominator variant) {
  cond.validate(spec);
  if (n < 1 || n >= cond.rank)
    throw DomainError("cond_moment_inner_closed_form: requires 1 <= n < k");
  const double shift = gamma / spec.dimension();
  const auto nd = static_cast<double>(n);
  if (nd + shift <= 0.0) return MomentValue::infinite();
  const double base = static_cast<double>(cond.rank) +
                      (variant == InnerMomentDenominator::k_plus_one ? 1.0 : 0.0);
  return MomentValue::finite(std::exp(gamma * std::log(cond.distance) +
                                      specfun::ln_pochhammer_rising(nd, shift) -
                                      specfun::ln_pochhammer_rising(base, shift)));
}

double cond_moment_outer_appell(const NetworkSpec& spec, const BeaconCondition& cond,
                                std::int64_t n, double gamma) {
  cond.validate(spec);
  if (n <= cond.rank || n > spec.nodes())
    throw DomainError("cond_moment_outer_appell: requires k < n <= N");
  const int d = spec.dimension();
  const auto a = static_cast<double>(n - cond.rank);
  const auto b = static_cast<double>(spec.nodes() - n + 1);
  const double y = 1.0 - std::pow(spec.radius() / cond.distance, d);
  const double f1 = specfun::appell_f1(a, static_cast<double>(n - spec.nodes()), -gamma / d,
                                       a + 1.0, 1.0, y);
  return std::pow(cond.distance, gamma) * f1 / (a * std::exp(specfun::ln_beta(b, a)));
}

ConditionalMomentReport cond_moment_report(const NetworkSpec& spec,
                                           const BeaconCondition& cond, std::int64_t n,
                                           double gamma) {
  ConditionalMomentReport report;
  report.quadrature = cond_moment(spec, cond, n, gamma);
  report.inner_branch = n < cond.rank;
  if (report.inner_branch) {
    report.k_plus_one_closed_form = cond_moment_inner_closed_form(
        spec, cond, n, gamma, InnerMomentDenominator::k_plus_one);
    report.k_closed_form = cond_moment_inner_closed_form(
        spec, cond, n, gamma, InnerMomentDenominator::k);
  } else if (n > cond.rank) {
    // Both variants coincide on the outer branch.
    const MomentValue f1 = MomentValue::finite(cond_moment_outer_appell(spec, cond, n, gamma));
    report.k_plus_one_closed_form = f1;
    report.k_closed_form = f1;
  }
  return report;
}

}  // namespace bppdist
