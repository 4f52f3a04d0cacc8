// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "bppdist/geometry.hpp"
#include "bppdist/moment_value.hpp"
#include "bppdist/specfun.hpp"

namespace bppdist {

/// The k-th nearest node is known to lie at distance s from the origin.
struct BeaconCondition {
  std::int64_t rank;  ///< k
  double distance;    ///< s, with 0 < s < R

  /// Throws DomainError unless 1 <= k <= N and 0 < s < R.
  void validate(const NetworkSpec& spec) const;
};

// Given R_k = s, the k-1 nearer nodes are uniform in B_d(o, s) and the N-k
// farther ones uniform in the shell between s and R. So for n < k, R_n is
// the rank-n law of k-1 nodes in a ball of radius s; for n > k, with
// q = (r^d - s^d)/(R^d - s^d), q ~ Beta(n-k, N-n+1).
//
// r must lie in [0, R]; the density is zero outside the branch support.
// n == k is a point mass at s and is rejected by the density functions.

double cond_pdf(const NetworkSpec& spec, const BeaconCondition& cond, std::int64_t n,
                double r);
double cond_cdf(const NetworkSpec& spec, const BeaconCondition& cond, std::int64_t n,
                double r);

/// k = 1 specialization: density of R_n, n >= 2, given R_1 = s.
double cond_pdf_given_nearest(const NetworkSpec& spec, double s, std::int64_t n, double r);

/// E[R_n^gamma | R_k = s] by quadrature of r^gamma against the branch law,
/// taken over the branch's beta-distributed volume fraction. Infinite when
/// n < k and n + gamma/d <= 0; s^gamma when n == k.
MomentValue cond_moment(const NetworkSpec& spec, const BeaconCondition& cond,
                        std::int64_t n, double gamma,
                        const specfun::QuadratureSpec& quad = {});

enum class InnerMomentDenominator {
  k_plus_one,  ///< s^g n^[g/d] / (k+1)^[g/d]
  k,           ///< s^g n^[g/d] / k^[g/d], the moment of the inner-branch density
};

/// Closed-form inner-branch moment (n < k).
MomentValue cond_moment_inner_closed_form(const NetworkSpec& spec,
                                          const BeaconCondition& cond, std::int64_t n,
                                          double gamma, InnerMomentDenominator variant);

/// Closed-form outer-branch moment (n > k):
/// s^g F1(n-k; n-N, -g/d; n-k+1; 1, 1-R^d/s^d) / ((n-k) B(N-n+1, n-k)).
double cond_moment_outer_appell(const NetworkSpec& spec, const BeaconCondition& cond,
                                std::int64_t n, double gamma);

/// Quadrature value plus every available closed form, for side-by-side output.
struct ConditionalMomentReport {
  MomentValue quadrature = MomentValue::finite(0.0);
  std::optional<MomentValue> k_plus_one_closed_form;
  std::optional<MomentValue> k_closed_form;
  bool inner_branch = false;
};

ConditionalMomentReport cond_moment_report(const NetworkSpec& spec,
                                           const BeaconCondition& cond, std::int64_t n,
                                           double gamma);

}  // namespace bppdist
