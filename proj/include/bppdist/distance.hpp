// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "bppdist/geometry.hpp"
#include "bppdist/moment_value.hpp"
#include "bppdist/rng.hpp"

namespace bppdist {

/// Distance R_n from the origin to the n-th nearest of N uniform nodes.
class NthNeighborQuery {
 public:
  /// Throws DomainError unless 1 <= rank <= spec.nodes().
  NthNeighborQuery(NetworkSpec spec, std::int64_t rank);

  const NetworkSpec& spec() const { return spec_; }
  std::int64_t rank() const { return rank_; }

 private:
  NetworkSpec spec_;
  std::int64_t rank_;
};

// Binomial point process: (R_n/R)^d ~ Beta(n, N - n + 1).
//
// Pr(R_n > r) is the probability of fewer than n nodes in B_d(o, r), which
// equals I_{1-p}(N-n+1, n) with p = (r/R)^d. The density is
// (d/R) (1-p)^(N-n) p^(n-1/d) / B(N-n+1, n). All functions take r in [0, R]
// and throw DomainError otherwise; endpoint values are the analytic limits.

double ccdf_rn(const NthNeighborQuery& q, double r);
double cdf_rn(const NthNeighborQuery& q, double r);
double pdf_rn(const NthNeighborQuery& q, double r);

/// Smallest r with cdf_rn(q, r) = u, for u in (0, 1); |cdf - u| <= 1e-10.
double quantile_rn(const NthNeighborQuery& q, double u);

/// E[R_n^gamma] = R^gamma n^[gamma/d] / (N+1)^[gamma/d] when n + gamma/d > 0,
/// infinite otherwise.
MomentValue moment_rn(const NthNeighborQuery& q, double gamma);
double mean_rn(const NthNeighborQuery& q);
double variance_rn(const NthNeighborQuery& q);

/// E[R_j - R_i] for ranks 1 <= i < j <= N.
double mean_internodal(const NetworkSpec& spec, std::int64_t i, std::int64_t j);

/// Probability that B_d(o, r) holds no node: (1 - (r/R)^d)^N.
double void_probability(const NetworkSpec& spec, double r);

/// Nearest- and farthest-node densities in Kumaraswamy form.
double nearest_pdf(const NetworkSpec& spec, double r);
double farthest_pdf(const NetworkSpec& spec, double r);

enum class SamplingMethod {
  order_statistics,  ///< N radii R U^(1/d), select the n-th smallest
  quantile,          ///< invert cdf_rn at one uniform
};

double sample_rn(const NthNeighborQuery& q, RandomStream& rng,
                 SamplingMethod method = SamplingMethod::order_statistics);

/// PPP of intensity lambda on B_d(o, R), conditioned on holding >= N points.
class ConditionedPppQuery {
 public:
  ConditionedPppQuery(double lambda, int dimension, double radius, std::int64_t min_points,
                      std::int64_t rank);

  double lambda() const { return lambda_; }
  int dimension() const { return dimension_; }
  double radius() const { return radius_; }
  std::int64_t min_points() const { return min_points_; }
  std::int64_t rank() const { return rank_; }

  /// Expected point count lambda c_d R^d of the unconditioned process.
  double window_mean() const;

 private:
  double lambda_;
  int dimension_;
  double radius_;
  std::int64_t min_points_;
  std::int64_t rank_;
};

// Poisson weights are combined in log space; NumericalError is thrown only
// when the conditioning probability itself is not representable.
double conditioned_ppp_pdf(const ConditionedPppQuery& q, double r);
double conditioned_ppp_ccdf(const ConditionedPppQuery& q, double r);
double conditioned_ppp_cdf(const ConditionedPppQuery& q, double r);

/// Probability that the unconditioned process holds >= N points.
double conditioned_ppp_acceptance(const ConditionedPppQuery& q);

/// n-th neighbour distance in an infinite PPP (generalized Gamma):
/// exp(-lambda c_d r^d) d (lambda c_d r^d)^n / (r Gamma(n)), r >= 0.
double ppp_limit_pdf(double lambda, int d, std::int64_t n, double r);
double ppp_limit_ccdf(double lambda, int d, std::int64_t n, double r);

}  // namespace bppdist
