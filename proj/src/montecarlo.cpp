// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "bppdist/errors.hpp"

namespace bppdist::mc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double path_gain(PathLoss law, double r, double alpha) {
  const double g = std::pow(r, -alpha);
  return law == PathLoss::bounded ? std::min(1.0, g) : g;
}

}  // namespace

void SimConfig::validate() const {
  if (trials < 1) throw DomainError("SimConfig: trials must be >= 1");
  if (workers < 1) throw DomainError("SimConfig: workers must be >= 1");
}

double EmpiricalSummary::standard_error() const {
  return count > 0 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
}

DistanceMatrix::DistanceMatrix(std::int64_t trials, std::int64_t nodes)
    : DistanceMatrix(trials, nodes,
                     std::vector<double>(static_cast<std::size_t>(trials * nodes))) {}

DistanceMatrix::DistanceMatrix(std::int64_t trials, std::int64_t nodes,
                               std::vector<double> data)
    : trials_(trials), nodes_(nodes), data_(std::move(data)) {
  if (trials < 0 || nodes < 1 ||
      data_.size() != static_cast<std::size_t>(trials) * static_cast<std::size_t>(nodes))
    throw DomainError("DistanceMatrix: data size does not match trials x nodes");
}

std::span<const double> DistanceMatrix::row(std::int64_t t) const {
  return {data_.data() + t * nodes_, static_cast<std::size_t>(nodes_)};
}

std::span<double> DistanceMatrix::row(std::int64_t t) {
  return {data_.data() + t * nodes_, static_cast<std::size_t>(nodes_)};
}

std::vector<double> DistanceMatrix::column(std::int64_t rank) const {
  if (rank < 1 || rank > nodes_) throw DomainError("DistanceMatrix: rank out of range");
  std::vector<double> out(static_cast<std::size_t>(trials_));
  for (std::int64_t t = 0; t < trials_; ++t) out[t] = data_[t * nodes_ + rank - 1];
  return out;
}

std::vector<double> run_blocks(
    const SimConfig& sim,
    const std::function<std::vector<double>(int, std::int64_t, std::int64_t, RandomStream&)>&
        fn) {
  sim.validate();
  const int blocks = static_cast<int>(std::min<std::int64_t>(sim.workers, sim.trials));
  std::vector<std::vector<double>> results(blocks);
  std::vector<std::exception_ptr> errors(blocks);
  auto run = [&](int b) {
    try {
      const std::int64_t first = sim.trials * b / blocks;
      const std::int64_t last = sim.trials * (b + 1) / blocks;
      RandomStream rng = RandomStream::split(sim.seed, static_cast<std::uint64_t>(b));
      results[b] = fn(b, first, last - first, rng);
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(blocks > 0 ? blocks - 1 : 0);
    for (int b = 1; b < blocks; ++b) threads.emplace_back(run, b);
    run(0);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::size_t total = 0;
  for (const auto& r : results) total += r.size();
  std::vector<double> out;
  out.reserve(total);
  for (const auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

DistanceMatrix sample_bpp_distances(const NetworkSpec& spec, const SimConfig& sim,
                                    std::size_t max_entries) {
  sim.validate();
  const auto nodes = spec.nodes();
  if (static_cast<double>(sim.trials) * static_cast<double>(nodes) >
      static_cast<double>(max_entries)) {
    throw ResourceError("sample_bpp_distances: trials x N = " +
                        std::to_string(sim.trials) + " x " + std::to_string(nodes) +
                        " exceeds the cap of " + std::to_string(max_entries) + " entries");
  }
  auto block = [&](int, std::int64_t, std::int64_t count, RandomStream& rng) {
    std::vector<double> rows(static_cast<std::size_t>(count * nodes));
    for (std::int64_t t = 0; t < count; ++t) {
      const auto begin = rows.begin() + t * nodes;
      for (auto it = begin; it != begin + nodes; ++it)
        *it = sample_radius(spec.dimension(), spec.radius(), rng);
      std::sort(begin, begin + nodes);
    }
    return rows;
  };
  return DistanceMatrix(sim.trials, nodes, run_blocks(sim, block));
}

double ks_test(std::span<const double> sorted_samples, const Cdf& cdf) {
  if (sorted_samples.empty()) throw DomainError("ks_test: empty sample");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
    throw DomainError("ks_test: samples must be sorted ascending");
  const auto n = static_cast<double>(sorted_samples.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    stat = std::max({stat, std::fabs(above), std::fabs(below)});
  }
  return std::min(stat, 1.0);
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw DomainError("ks_critical_value: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_critical_value: alpha in (0,1)");
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double rn = std::sqrt(static_cast<double>(n));
  return c / (rn + 0.12 + 0.11 / rn);
}

EmpiricalSummary summarize(std::span<const double> samples, std::uint64_t seed,
                           const Cdf* reference) {
  if (samples.empty()) throw DomainError("summarize: empty sample");
  EmpiricalSummary s;
  s.count = static_cast<std::int64_t>(samples.size());
  s.seed = seed;
  // Welford in sample order.
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t k = 0;
  for (double x : samples) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  s.mean = mean;
  s.variance = s.count > 1 ? m2 / static_cast<double>(s.count - 1) : 0.0;
  if (reference != nullptr) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    s.ks_statistic = ks_test(sorted, *reference);
  }
  return s;
}

std::vector<double> simulate_interference_samples(const NetworkSpec& spec,
                                                  const MetricConfig& cfg,
                                                  const SimConfig& sim) {
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw DomainError("interference: p must lie in [0,1]");
  if (!(cfg.alpha >= 0.0)) throw DomainError("interference: alpha must be >= 0");
  auto block = [&](int, std::int64_t, std::int64_t count, RandomStream& rng) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (double& total : out) {
      total = 0.0;
      for (std::int64_t i = 0; i < spec.nodes(); ++i) {
        const double r = sample_radius(spec.dimension(), spec.radius(), rng);
        if (rng.bernoulli(cfg.p)) total += path_gain(cfg.pathloss, r, cfg.alpha);
      }
    }
    return out;
  };
  return run_blocks(sim, block);
}

EmpiricalSummary simulate_interference(const NetworkSpec& spec, const MetricConfig& cfg,
                                       const SimConfig& sim) {
  const auto start = Clock::now();
  const std::vector<double> samples = simulate_interference_samples(spec, cfg, sim);
  EmpiricalSummary s = summarize(samples, sim.seed);
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t keep = sorted.size() - sorted.size() / 1000;
  double trimmed = 0.0;
  for (std::size_t i = 0; i < keep; ++i) trimmed += sorted[i];
  s.trimmed_mean = trimmed / static_cast<double>(keep);
  s.elapsed_seconds = seconds_since(start);
  return s;
}

std::vector<EmpiricalSummary> simulate_outage_sweep(const NetworkSpec& spec,
                                                    const MetricConfig& cfg,
                                                    std::span<const double> thetas,
                                                    const SimConfig& sim) {
  const auto start = Clock::now();
  const std::vector<double> interference = simulate_interference_samples(spec, cfg, sim);
  std::vector<EmpiricalSummary> out;
  out.reserve(thetas.size());
  std::vector<double> indicator(interference.size());
  for (double theta : thetas) {
    if (!(theta > 0.0)) throw DomainError("simulate_outage: theta must be > 0");
    const double limit = 1.0 / theta;
    std::transform(interference.begin(), interference.end(), indicator.begin(),
                   [limit](double i) { return i > limit ? 1.0 : 0.0; });
    EmpiricalSummary s = summarize(indicator, sim.seed);
    s.elapsed_seconds = seconds_since(start);
    out.push_back(s);
  }
  return out;
}

EmpiricalSummary simulate_outage(const NetworkSpec& spec, const MetricConfig& cfg,
                                 const SimConfig& sim) {
  const double theta = cfg.theta;
  return simulate_outage_sweep(spec, cfg, std::span<const double>(&theta, 1), sim).front();
}

EmpiricalSummary simulate_connectivity(const NetworkSpec& spec, const MetricConfig& cfg,
                                       std::int64_t n, const SimConfig& sim) {
  cfg.validate();
  const NthNeighborQuery query(spec, n);
  const auto start = Clock::now();
  const double required = cfg.n0 * cfg.theta;
  auto block = [&](int, std::int64_t, std::int64_t count, RandomStream& rng) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (double& connected : out) {
      const double r = sample_rn(query, rng);
      connected = path_gain(cfg.pathloss, r, cfg.alpha) > required ? 1.0 : 0.0;
    }
    return out;
  };
  const std::vector<double> indicator = run_blocks(sim, block);
  EmpiricalSummary s = summarize(indicator, sim.seed);
  s.elapsed_seconds = seconds_since(start);
  return s;
}

ConditionedPppSamples simulate_conditioned_ppp(const ConditionedPppQuery& query,
                                               const SimConfig& sim,
                                               double attempt_factor) {
  sim.validate();
  const auto start = Clock::now();
  const double acceptance = conditioned_ppp_acceptance(query);
  if (!(acceptance >= 1e-6)) {
    throw ResourceError("simulate_conditioned_ppp: acceptance probability " +
                        std::to_string(acceptance) + " is below 1e-6");
  }
  const double window_mean = query.window_mean();
  std::vector<std::int64_t> attempts(static_cast<std::size_t>(sim.workers), 0);
  auto block = [&](int b, std::int64_t, std::int64_t count, RandomStream& rng) {
    const auto budget = static_cast<std::int64_t>(
        std::ceil(attempt_factor * static_cast<double>(count) / acceptance) + 1000.0);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<double> radii;
    std::int64_t tries = 0;
    while (static_cast<std::int64_t>(out.size()) < count) {
      if (++tries > budget)
        throw ResourceError("simulate_conditioned_ppp: rejection budget exceeded");
      const auto points = static_cast<std::int64_t>(rng.poisson(window_mean));
      if (points < query.min_points()) continue;
      radii.resize(static_cast<std::size_t>(points));
      for (double& r : radii) r = sample_radius(query.dimension(), query.radius(), rng);
      const auto nth = radii.begin() + (query.rank() - 1);
      std::nth_element(radii.begin(), nth, radii.end());
      out.push_back(*nth);
    }
    attempts[static_cast<std::size_t>(b)] = tries;
    return out;
  };
  ConditionedPppSamples result;
  result.samples = run_blocks(sim, block);
  for (std::int64_t a : attempts) result.attempts += a;
  const Cdf reference = [&query](double r) { return conditioned_ppp_cdf(query, r); };
  result.summary = summarize(result.samples, sim.seed, &reference);
  result.summary.elapsed_seconds = seconds_since(start);
  return result;
}

}  // namespace bppdist::mc
