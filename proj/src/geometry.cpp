// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/geometry.hpp"

#include <cmath>
#include <numbers>

#include "bppdist/errors.hpp"

namespace bppdist {

NetworkSpec::NetworkSpec(int dimension, double radius, std::int64_t nodes)
    : dimension_(dimension), radius_(radius), nodes_(nodes) {
  if (dimension < 1) throw DomainError("NetworkSpec: dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw DomainError("NetworkSpec: radius must be finite and > 0");
  if (nodes < 1) throw DomainError("NetworkSpec: node count must be >= 1");
}

double Point::norm() const {
  double s = 0.0;
  for (double c : coords) s += c * c;
  return std::sqrt(s);
}

double unit_ball_volume(int d) {
  if (d < 1) throw DomainError("unit_ball_volume: dimension must be >= 1");
  // c_d = c_{d-2} * 2 pi / d with c_0 = 1, c_1 = 2; keeps c_1, c_2, c_3 exact
  // to the last bit.
  double c = d % 2 == 0 ? 1.0 : 2.0;
  for (int k = d % 2 == 0 ? 2 : 3; k <= d; k += 2) c *= 2.0 * std::numbers::pi / k;
  return c;
}

double density(const NetworkSpec& spec) {
  return static_cast<double>(spec.nodes()) /
         (unit_ball_volume(spec.dimension()) * std::pow(spec.radius(), spec.dimension()));
}

double sample_radius(int d, double radius, RandomStream& rng) {
  return radius * std::pow(rng.uniform(), 1.0 / d);
}

Point sample_uniform_in_ball(int d, double radius, RandomStream& rng) {
  if (d < 1) throw DomainError("sample_uniform_in_ball: dimension must be >= 1");
  if (!(radius > 0.0)) throw DomainError("sample_uniform_in_ball: radius must be > 0");
  Point p;
  p.coords.resize(static_cast<std::size_t>(d));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& c : p.coords) {
      c = rng.normal();
      norm2 += c * c;
    }
  } while (norm2 == 0.0);
  const double scale = sample_radius(d, radius, rng) / std::sqrt(norm2);
  for (double& c : p.coords) c *= scale;
  return p;
}

}  // namespace bppdist
