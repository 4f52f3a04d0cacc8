// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bppdist/errors.hpp"
#include "bppdist/specfun.hpp"

namespace bppdist {
namespace {

struct VolumeFraction {
  double p;  // (r/R)^d
  double q;  // 1 - p, computed without cancellation
};

VolumeFraction volume_fraction(const NetworkSpec& spec, double r, const char* fn) {
  if (!(r >= 0.0 && r <= spec.radius()))
    throw DomainError(std::string(fn) + ": r must lie in [0, R]");
  if (r == 0.0) return {0.0, 1.0};
  if (r == spec.radius()) return {1.0, 0.0};
  const double log_ratio = std::log(r / spec.radius());
  const double d = spec.dimension();
  return {std::exp(d * log_ratio), -std::expm1(d * log_ratio)};
}

double ln_moment_rn(const NthNeighborQuery& q, double gamma) {
  const double shift = gamma / q.spec().dimension();
  const auto n = static_cast<double>(q.rank());
  const auto big_n = static_cast<double>(q.spec().nodes());
  return gamma * std::log(q.spec().radius()) + specfun::ln_pochhammer_rising(n, shift) -
         specfun::ln_pochhammer_rising(big_n + 1.0, shift);
}

}  // namespace

NthNeighborQuery::NthNeighborQuery(NetworkSpec spec, std::int64_t rank)
    : spec_(spec), rank_(rank) {
  if (rank < 1 || rank > spec.nodes())
    throw DomainError("NthNeighborQuery: rank must satisfy 1 <= n <= N (n=" +
                      std::to_string(rank) + ", N=" + std::to_string(spec.nodes()) + ")");
}

double ccdf_rn(const NthNeighborQuery& q, double r) {
  const auto [p, omp] = volume_fraction(q.spec(), r, "ccdf_rn");
  const auto n = static_cast<double>(q.rank());
  const auto big_n = static_cast<double>(q.spec().nodes());
  return specfun::reg_inc_beta_pair(omp, p, big_n - n + 1.0, n).first;
}

double cdf_rn(const NthNeighborQuery& q, double r) {
  const auto [p, omp] = volume_fraction(q.spec(), r, "cdf_rn");
  const auto n = static_cast<double>(q.rank());
  const auto big_n = static_cast<double>(q.spec().nodes());
  return specfun::reg_inc_beta_pair(omp, p, big_n - n + 1.0, n).second;
}

double pdf_rn(const NthNeighborQuery& q, double r) {
  const auto [p, omp] = volume_fraction(q.spec(), r, "pdf_rn");
  const NetworkSpec& spec = q.spec();
  const double d = spec.dimension();
  const auto n = static_cast<double>(q.rank());
  const double b = static_cast<double>(spec.nodes()) - n + 1.0;
  if (p == 0.0 || omp == 0.0) {
    // d r^(d-1) / R^d times the Beta(n, N-n+1) density at the edge.
    const double jacobian = d * std::pow(r / spec.radius(), d - 1.0) / spec.radius();
    return jacobian * specfun::beta_density(p, n, b).value();
  }
  return (d / r) * std::exp(specfun::ln_beta_kernel(p, omp, n, b) - std::log(omp));
}

double quantile_rn(const NthNeighborQuery& q, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile_rn: u must lie in (0, 1)");
  double lo = 0.0;
  double hi = q.spec().radius();
  for (int i = 0; i < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi;
       ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_rn(q, mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double r = 0.5 * (lo + hi);
  double residual = cdf_rn(q, r) - u;
  const double density = pdf_rn(q, r);
  if (density > 0.0) {
    const double polished = std::clamp(r - residual / density, lo, hi);
    const double polished_residual = cdf_rn(q, polished) - u;
    if (std::fabs(polished_residual) < std::fabs(residual)) {
      r = polished;
      residual = polished_residual;
    }
  }
  if (std::fabs(residual) > 1e-10)
    throw ConvergenceError("quantile_rn: residual " + std::to_string(residual));
  return r;
}

MomentValue moment_rn(const NthNeighborQuery& q, double gamma) {
  if (!std::isfinite(gamma)) throw DomainError("moment_rn: gamma must be finite");
  if (static_cast<double>(q.rank()) + gamma / q.spec().dimension() <= 0.0)
    return MomentValue::infinite();
  return MomentValue::finite(std::exp(ln_moment_rn(q, gamma)));
}

double mean_rn(const NthNeighborQuery& q) { return moment_rn(q, 1.0).value(); }

double variance_rn(const NthNeighborQuery& q) {
  // Var = m1^2 (m2/m1^2 - 1), with the ratio formed in log space.
  const double ln_m1 = ln_moment_rn(q, 1.0);
  const double ln_m2 = ln_moment_rn(q, 2.0);
  return std::max(0.0, std::exp(2.0 * ln_m1) * std::expm1(ln_m2 - 2.0 * ln_m1));
}

double mean_internodal(const NetworkSpec& spec, std::int64_t i, std::int64_t j) {
  if (i < 1 || j > spec.nodes() || i >= j)
    throw DomainError("mean_internodal: ranks must satisfy 1 <= i < j <= N");
  return mean_rn(NthNeighborQuery(spec, j)) - mean_rn(NthNeighborQuery(spec, i));
}

double void_probability(const NetworkSpec& spec, double r) {
  const auto [p, omp] = volume_fraction(spec, r, "void_probability");
  return std::pow(omp, static_cast<double>(spec.nodes()));
}

double nearest_pdf(const NetworkSpec& spec, double r) {
  const auto [p, omp] = volume_fraction(spec, r, "nearest_pdf");
  const double d = spec.dimension();
  const auto big_n = static_cast<double>(spec.nodes());
  return d * big_n / spec.radius() * std::pow(r / spec.radius(), d - 1.0) *
         std::pow(omp, big_n - 1.0);
}

double farthest_pdf(const NetworkSpec& spec, double r) {
  volume_fraction(spec, r, "farthest_pdf");
  const double d = spec.dimension();
  const auto big_n = static_cast<double>(spec.nodes());
  return d * big_n / spec.radius() * std::pow(r / spec.radius(), big_n * d - 1.0);
}

double sample_rn(const NthNeighborQuery& q, RandomStream& rng, SamplingMethod method) {
  if (method == SamplingMethod::quantile) return quantile_rn(q, rng.uniform());
  const NetworkSpec& spec = q.spec();
  std::vector<double> radii(static_cast<std::size_t>(spec.nodes()));
  for (double& r : radii) r = sample_radius(spec.dimension(), spec.radius(), rng);
  const auto nth = radii.begin() + (q.rank() - 1);
  std::nth_element(radii.begin(), nth, radii.end());
  return *nth;
}

double ppp_limit_pdf(double lambda, int d, std::int64_t n, double r) {
  if (!(lambda > 0.0) || d < 1 || n < 1)
    throw DomainError("ppp_limit_pdf: requires lambda > 0, d >= 1, n >= 1");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("ppp_limit_pdf: r must be >= 0");
  const double intensity = lambda * unit_ball_volume(d);
  if (r == 0.0) {
    // d (lambda c_d)^n r^(nd-1) e^(-mu) / Gamma(n) at r = 0.
    return static_cast<double>(n) * d == 1.0 ? d * intensity : 0.0;
  }
  const double mean = intensity * std::pow(r, d);
  return d * static_cast<double>(n) / r * std::exp(specfun::ln_poisson_pmf(n, mean));
}

double ppp_limit_ccdf(double lambda, int d, std::int64_t n, double r) {
  if (!(lambda > 0.0) || d < 1 || n < 1)
    throw DomainError("ppp_limit_ccdf: requires lambda > 0, d >= 1, n >= 1");
  if (!(r >= 0.0)) throw DomainError("ppp_limit_ccdf: r must be >= 0");
  if (std::isinf(r)) return 0.0;
  const double mean = lambda * unit_ball_volume(d) * std::pow(r, d);
  return -std::expm1(specfun::ln_poisson_tail_ge(n, mean));
}

}  // namespace bppdist
