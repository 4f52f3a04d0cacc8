// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "bppdist/rng.hpp"

namespace bppdist {

/// N nodes uniformly distributed in the d-dimensional ball of radius R
/// centred at the origin.
class NetworkSpec {
 public:
  /// Throws DomainError unless dimension >= 1, radius > 0, nodes >= 1.
  NetworkSpec(int dimension, double radius, std::int64_t nodes);

  int dimension() const { return dimension_; }
  double radius() const { return radius_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  int dimension_;
  double radius_;
  std::int64_t nodes_;
};

struct Point {
  std::vector<double> coords;

  double norm() const;
};

/// Volume of the unit ball in R^d: pi^(d/2) / Gamma(1 + d/2).
double unit_ball_volume(int d);

/// Node density N / (c_d R^d).
double density(const NetworkSpec& spec);

/// A point uniform on the ball B_d(o, R): Gaussian direction, radius R U^(1/d).
Point sample_uniform_in_ball(int d, double radius, RandomStream& rng);

/// Distance from the origin of a point uniform on B_d(o, R).
double sample_radius(int d, double radius, RandomStream& rng);

}  // namespace bppdist
