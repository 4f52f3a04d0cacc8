// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>

namespace bppdist {

/// SplitMix64 finalizer, a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t z);

/// Seed of stream `index` under `master`. A pure function of both
/// arguments, so any stream can be recreated without generating the others.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// A single-owner random stream: mt19937_64 plus the variate generators the
/// simulations need. The variate algorithms are implemented here rather than
/// through <random> distributions so that outputs are identical across
/// standard library implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream `index` split from `master` by counter.
  static RandomStream split(std::uint64_t master, std::uint64_t index) {
    return RandomStream(derive_stream_seed(master, index));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by the Marsaglia polar method.
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  /// Poisson variate. Exact (chunked inversion) for mean <= 1000, normal
  /// approximation with continuity correction above.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace bppdist
