// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bppdist/distance.hpp"
#include "bppdist/geometry.hpp"
#include "bppdist/metrics.hpp"
#include "bppdist/rng.hpp"

/// Seeded Monte Carlo oracles for the analytic laws.
///
/// Trials are split into `workers` contiguous blocks; block b draws from
/// RandomStream::split(seed, b) and per-trial outputs are concatenated in
/// block order. Results are therefore bit-identical for a fixed
/// (seed, workers) pair regardless of thread scheduling, and statistically
/// equivalent across different worker counts.
namespace bppdist::mc {

struct SimConfig {
  std::uint64_t seed = 0;
  std::int64_t trials = 100'000;
  int workers = 1;

  void validate() const;
};

struct EmpiricalSummary {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased sample variance
  std::optional<double> ks_statistic;
  std::optional<double> trimmed_mean;  ///< interference only: top 0.1% removed
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;

  double standard_error() const;
};

/// Cap on trials x N doubles held by sample_bpp_distances (1 GiB).
inline constexpr std::size_t kDefaultMaxMatrixEntries = std::size_t{1} << 27;

/// Row-major trials x N matrix; each row holds sorted node distances.
class DistanceMatrix {
 public:
  DistanceMatrix(std::int64_t trials, std::int64_t nodes);
  /// Adopts `data`, which must hold trials x nodes entries.
  DistanceMatrix(std::int64_t trials, std::int64_t nodes, std::vector<double> data);

  std::int64_t trials() const { return trials_; }
  std::int64_t nodes() const { return nodes_; }
  std::span<const double> row(std::int64_t t) const;
  std::span<double> row(std::int64_t t);
  /// Distances of rank n (1-based) across all trials, in trial order.
  std::vector<double> column(std::int64_t rank) const;

 private:
  std::int64_t trials_;
  std::int64_t nodes_;
  std::vector<double> data_;
};

DistanceMatrix sample_bpp_distances(const NetworkSpec& spec, const SimConfig& sim,
                                    std::size_t max_entries = kDefaultMaxMatrixEntries);

using Cdf = std::function<double(double)>;

/// Kolmogorov-Smirnov statistic of sorted samples against a reference cdf.
double ks_test(std::span<const double> sorted_samples, const Cdf& cdf);

/// Asymptotic KS critical value with Stephens' finite-n correction:
/// c(alpha) / (sqrt(n) + 0.12 + 0.11/sqrt(n)), c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(std::size_t n, double alpha = 0.01);

/// Mean, variance and (optionally) KS statistic of a sample set.
EmpiricalSummary summarize(std::span<const double> samples, std::uint64_t seed,
                           const Cdf* reference = nullptr);

/// Per-trial interference at the origin: sum over nodes of T_i g(|X_i|)
/// with T_i ~ Bernoulli(p).
std::vector<double> simulate_interference_samples(const NetworkSpec& spec,
                                                  const MetricConfig& cfg,
                                                  const SimConfig& sim);

EmpiricalSummary simulate_interference(const NetworkSpec& spec, const MetricConfig& cfg,
                                       const SimConfig& sim);

/// Outage frequency Pr(I > 1/theta); `mean` holds the frequency.
EmpiricalSummary simulate_outage(const NetworkSpec& spec, const MetricConfig& cfg,
                                 const SimConfig& sim);

/// simulate_outage for several thresholds sharing one set of interference draws.
std::vector<EmpiricalSummary> simulate_outage_sweep(const NetworkSpec& spec,
                                                    const MetricConfig& cfg,
                                                    std::span<const double> thetas,
                                                    const SimConfig& sim);

/// Frequency with which the n-th neighbour's noise-only SNR exceeds theta.
EmpiricalSummary simulate_connectivity(const NetworkSpec& spec, const MetricConfig& cfg,
                                       std::int64_t n, const SimConfig& sim);

struct ConditionedPppSamples {
  EmpiricalSummary summary;  ///< ks_statistic against conditioned_ppp_cdf
  std::vector<double> samples;
  std::int64_t attempts = 0;
};

/// Rejection sampling of a PPP(lambda) on the ball until >= N points,
/// recording the rank-n distance. Throws ResourceError when the analytic
/// acceptance probability is below 1e-6 or a block exhausts its attempt
/// budget (`attempt_factor` / acceptance attempts per accepted sample).
ConditionedPppSamples simulate_conditioned_ppp(const ConditionedPppQuery& query,
                                               const SimConfig& sim,
                                               double attempt_factor = 20.0);

/// Runs fn(block_index, first_trial, trial_count, stream) on each block,
/// one thread per block, and concatenates the returned vectors in block order.
std::vector<double> run_blocks(
    const SimConfig& sim,
    const std::function<std::vector<double>(int, std::int64_t, std::int64_t, RandomStream&)>&
        fn);

}  // namespace bppdist::mc
