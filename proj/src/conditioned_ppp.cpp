// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
//
// n-th neighbour law of a Poisson process on B_d(o, R) conditioned on
// holding at least N points. With A_k(r) the Poisson(lambda c_d r^d) weight
// of k points inside B_d(o, r) and T_m(r) the probability of at least m
// points in the shell beyond r:
//
//   ccdf(r) = sum_{k<n} A_k(r) T_{N-k}(r) / Pr(>= N points)
//   pdf(r)  = lambda d c_d r^(d-1) A_{n-1}(r) T_{N-n}(r) / Pr(>= N points)
//
// T_m is one minus the truncated sum of shell weights B_l; it equals 1 for
// m <= 0, which is the empty-sum convention at n = N.
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/specfun.hpp"

namespace bppdist {
namespace {

struct PoissonMeans {
  double inner;  // lambda c_d r^d
  double shell;  // lambda c_d (R^d - r^d)
};

PoissonMeans poisson_means(const ConditionedPppQuery& q, double r, const char* fn) {
  if (!(r >= 0.0 && r <= q.radius()))
    throw DomainError(std::string(fn) + ": r must lie in [0, R]");
  const double total = q.window_mean();
  if (r == 0.0) return {0.0, total};
  if (r == q.radius()) return {total, 0.0};
  const double scaled = q.dimension() * std::log(r / q.radius());
  return {total * std::exp(scaled), -total * std::expm1(scaled)};
}

double ln_conditioning_probability(const ConditionedPppQuery& q) {
  const double ln_denominator = specfun::ln_poisson_tail_ge(q.min_points(), q.window_mean());
  if (!std::isfinite(ln_denominator)) {
    throw NumericalError("conditioned PPP: Pr(at least N points) not representable for "
                         "lambda c_d R^d = " +
                         std::to_string(q.window_mean()));
  }
  return ln_denominator;
}

}  // namespace

ConditionedPppQuery::ConditionedPppQuery(double lambda, int dimension, double radius,
                                         std::int64_t min_points, std::int64_t rank)
    : lambda_(lambda),
      dimension_(dimension),
      radius_(radius),
      min_points_(min_points),
      rank_(rank) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("ConditionedPppQuery: lambda must be finite and > 0");
  if (dimension < 1) throw DomainError("ConditionedPppQuery: dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw DomainError("ConditionedPppQuery: radius must be finite and > 0");
  if (min_points < 1) throw DomainError("ConditionedPppQuery: N must be >= 1");
  if (rank < 1 || rank > min_points)
    throw DomainError("ConditionedPppQuery: rank must satisfy 1 <= n <= N");
}

double ConditionedPppQuery::window_mean() const {
  return lambda_ * unit_ball_volume(dimension_) * std::pow(radius_, dimension_);
}

double conditioned_ppp_acceptance(const ConditionedPppQuery& q) {
  return std::exp(specfun::ln_poisson_tail_ge(q.min_points(), q.window_mean()));
}

double conditioned_ppp_pdf(const ConditionedPppQuery& q, double r) {
  const PoissonMeans means = poisson_means(q, r, "conditioned_ppp_pdf");
  const double ln_denominator = ln_conditioning_probability(q);
  const std::int64_t n = q.rank();
  const double ln_weight = specfun::ln_poisson_pmf(n - 1, means.inner) +
                           specfun::ln_poisson_tail_ge(q.min_points() - n, means.shell);
  const double d = q.dimension();
  const double jacobian =
      d * q.window_mean() / q.radius() * std::pow(r / q.radius(), d - 1.0);
  return jacobian * std::exp(ln_weight - ln_denominator);
}

double conditioned_ppp_ccdf(const ConditionedPppQuery& q, double r) {
  const PoissonMeans means = poisson_means(q, r, "conditioned_ppp_ccdf");
  const double ln_denominator = ln_conditioning_probability(q);
  double ln_sum = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < q.rank(); ++k) {
    const double ln_term = specfun::ln_poisson_pmf(k, means.inner) +
                           specfun::ln_poisson_tail_ge(q.min_points() - k, means.shell);
    ln_sum = specfun::log_add_exp(ln_sum, ln_term);
  }
  return std::clamp(std::exp(ln_sum - ln_denominator), 0.0, 1.0);
}

double conditioned_ppp_cdf(const ConditionedPppQuery& q, double r) {
  return 1.0 - conditioned_ppp_ccdf(q, r);
}

}  // namespace bppdist
