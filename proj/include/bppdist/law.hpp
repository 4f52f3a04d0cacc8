// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "bppdist/conditional.hpp"
#include "bppdist/distance.hpp"
#include "bppdist/rng.hpp"

namespace bppdist {

struct Support {
  double lo;
  double hi;  ///< +inf for the infinite-PPP law
};

/// Rank-n distance in a binomial network.
struct BppNeighborLaw {
  NthNeighborQuery query;
};

/// Rank-n distance in a PPP on the ball conditioned on >= N points.
struct ConditionedPppNeighborLaw {
  ConditionedPppQuery query;
};

/// Rank-n distance in an infinite homogeneous PPP.
struct PppLimitNeighborLaw {
  double lambda;
  int dimension;
  std::int64_t rank;
};

/// Rank-n distance in a binomial network given that rank k sits at s.
struct BeaconConditionalLaw {
  NetworkSpec spec;
  BeaconCondition condition;
  std::int64_t rank;
};

using DistanceLaw = std::variant<BppNeighborLaw, ConditionedPppNeighborLaw,
                                 PppLimitNeighborLaw, BeaconConditionalLaw>;

std::string_view law_name(const DistanceLaw& law);
Support support(const DistanceLaw& law);
double pdf(const DistanceLaw& law, double r);
double cdf(const DistanceLaw& law, double r);
double ccdf(const DistanceLaw& law, double r);

/// Inverse cdf by bracketed bisection; |cdf - u| <= 1e-10.
double quantile(const DistanceLaw& law, double u);

/// One variate. Binomial laws use the order-statistics construction, the
/// others invert the cdf.
double sample(const DistanceLaw& law, RandomStream& rng);

}  // namespace bppdist
