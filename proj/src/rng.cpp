// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/rng.hpp"

#include <cmath>

#include "bppdist/errors.hpp"

namespace bppdist {
namespace {

constexpr double kExactPoissonLimit = 1000.0;
constexpr double kInversionChunk = 500.0;

std::uint64_t poisson_by_inversion(double mean, RandomStream& rng) {
  const double u = rng.uniform();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    const double next = cdf + pmf;
    if (next == cdf) break;  // remaining mass below double resolution
    cdf = next;
  }
  return k;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

double RandomStream::normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  return u * scale;
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw DomainError("poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean > kExactPoissonLimit) {
    const double draw = std::floor(mean + std::sqrt(mean) * normal() + 0.5);
    return draw < 0.0 ? 0 : static_cast<std::uint64_t>(draw);
  }
  // A sum of independent Poisson variates is Poisson, so large means are
  // split into chunks whose exp(-chunk) stays well inside double range.
  const int chunks = static_cast<int>(std::ceil(mean / kInversionChunk));
  const double chunk_mean = mean / chunks;
  std::uint64_t total = 0;
  for (int i = 0; i < chunks; ++i) total += poisson_by_inversion(chunk_mean, *this);
  return total;
}

}  // namespace bppdist
