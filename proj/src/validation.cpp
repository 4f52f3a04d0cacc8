// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bppdist/conditional.hpp"
#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/metrics.hpp"
#include "bppdist/specfun.hpp"

namespace bppdist {
namespace {

using mc::SimConfig;

constexpr double kKsAlpha = 0.01;
constexpr double kMeanZ = 4.0;
constexpr double kVarianceZ = 5.0;
constexpr double kInterferenceRelTol = 0.02;
constexpr double kConnectivityAbsTol = 0.01;
constexpr double kOutageSigmas = 2.0;
constexpr double kOutageTightGap = 0.05;
constexpr double kNormalizationTol = 1e-8;
constexpr double kAppellRelTol = 1e-6;
constexpr int kMirrorBins = 20;

// Each check draws from its own stream family so suites can be run alone or
// together with identical results.
SimConfig derived(const SimConfig& sim, std::uint64_t tag) {
  SimConfig out = sim;
  out.seed = derive_stream_seed(sim.seed, 0x1000 + tag);
  return out;
}

std::string fmt(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double fourth = 0.0;  // central
};

Moments sample_moments(const std::vector<double>& x) {
  Moments m;
  const auto n = static_cast<double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d2 = (v - m.mean) * (v - m.mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  m.variance = m2 / (n - 1.0);
  m.fourth = m4 / n;
  return m;
}

double z_score(double estimate, double reference, double standard_error) {
  if (standard_error > 0.0) return std::fabs(estimate - reference) / standard_error;
  return estimate == reference ? 0.0 : std::numeric_limits<double>::infinity();
}

double ks_against(std::vector<double> samples, const mc::Cdf& cdf) {
  std::sort(samples.begin(), samples.end());
  return mc::ks_test(samples, cdf);
}

void distance_suite(const SimConfig& sim, double widen, std::vector<CheckResult>& out) {
  const auto trials = static_cast<std::size_t>(sim.trials);
  const double ks_crit = mc::ks_critical_value(trials, kKsAlpha) * widen;

  {
    const NetworkSpec spec(1, 1.0, 1);
    const auto m = mc::sample_bpp_distances(spec, derived(sim, 1));
    const double ks = ks_against(m.column(1), [](double r) { return r; });
    out.push_back(make_check("ks-uniform-d1-N1", ks, ks_crit));
  }

  for (int d = 1; d <= 3; ++d) {
    const NetworkSpec spec(d, 1.0, 10);
    const auto m = mc::sample_bpp_distances(spec, derived(sim, 10 + d));
    const std::string tag = "d" + std::to_string(d) + "-N10";

    std::int64_t unsorted = 0;
    for (std::int64_t t = 0; t < m.trials(); ++t) {
      const auto row = m.row(t);
      if (!std::is_sorted(row.begin(), row.end())) ++unsorted;
    }
    out.push_back(make_check("rows-sorted-" + tag, static_cast<double>(unsorted), 0.0));

    for (std::int64_t n = 1; n <= spec.nodes(); ++n) {
      const NthNeighborQuery q(spec, n);
      const std::vector<double> col = m.column(n);
      const Moments mom = sample_moments(col);
      const double se_mean = std::sqrt(mom.variance / static_cast<double>(trials));
      const double se_var = std::sqrt(
          std::max(0.0, mom.fourth - mom.variance * mom.variance) / static_cast<double>(trials));
      const std::string name = tag + "-n" + std::to_string(n);
      out.push_back(make_check("mean-z-" + name, z_score(mom.mean, mean_rn(q), se_mean),
                               kMeanZ * widen));
      out.push_back(make_check("variance-z-" + name,
                               z_score(mom.variance, variance_rn(q), se_var),
                               kVarianceZ * widen));
      if (n == 1 || n == 3 || n == spec.nodes()) {
        const double ks = ks_against(col, [&q](double r) { return cdf_rn(q, r); });
        out.push_back(make_check("ks-" + name, ks, ks_crit));
      }
    }

    if (d == 1 && m.trials() >= 2) {
      // R_n and R - R_{N-n+1} share a law on the line; compare disjoint halves.
      const std::int64_t n = 3;
      const std::int64_t mirror = spec.nodes() - n + 1;
      const NthNeighborQuery q(spec, n);
      std::array<double, kMirrorBins - 1> edges{};
      for (int i = 1; i < kMirrorBins; ++i)
        edges[i - 1] = quantile_rn(q, static_cast<double>(i) / kMirrorBins);
      auto bin_of = [&edges](double r) {
        return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), r) - edges.begin());
      };
      std::array<double, kMirrorBins> direct{};
      std::array<double, kMirrorBins> mirrored{};
      const std::int64_t half = m.trials() / 2;
      for (std::int64_t t = 0; t < half; ++t) {
        direct[bin_of(m.row(t)[n - 1])] += 1.0;
        mirrored[bin_of(spec.radius() - m.row(half + t)[mirror - 1])] += 1.0;
      }
      double chi2 = 0.0;
      int used = 0;
      for (int i = 0; i < kMirrorBins; ++i) {
        const double total = direct[i] + mirrored[i];
        if (total == 0.0) continue;
        chi2 += (direct[i] - mirrored[i]) * (direct[i] - mirrored[i]) / total;
        ++used;
      }
      out.push_back(make_check("mirror-chi2-d1-N10-n3", chi2,
                               chi_square_critical_1pct(std::max(1, used - 1)) * widen));
    }
  }

  // Conditional laws given the k-th neighbour at distance s: the inner nodes
  // are uniform in B(o, s), the outer ones uniform in the shell.
  const NetworkSpec spec(2, 1.0, 10);
  const BeaconCondition cond{5, 0.6};
  const double d = spec.dimension();
  const double sd = std::pow(cond.distance, d);
  const double rd = std::pow(spec.radius(), d);
  for (const std::int64_t n : {std::int64_t{3}, std::int64_t{7}}) {
    const bool inner = n < cond.rank;
    const std::int64_t count = inner ? cond.rank - 1 : spec.nodes() - cond.rank;
    const std::int64_t pick = inner ? n : n - cond.rank;
    auto block = [&](int, std::int64_t, std::int64_t trials_in_block, RandomStream& rng) {
      std::vector<double> radii(static_cast<std::size_t>(count));
      std::vector<double> values(static_cast<std::size_t>(trials_in_block));
      for (double& v : values) {
        for (double& r : radii) {
          r = inner ? cond.distance * std::pow(rng.uniform(), 1.0 / d)
                    : std::pow(sd + (rd - sd) * rng.uniform(), 1.0 / d);
        }
        const auto nth = radii.begin() + (pick - 1);
        std::nth_element(radii.begin(), nth, radii.end());
        v = *nth;
      }
      return values;
    };
    const std::vector<double> samples = mc::run_blocks(derived(sim, 20 + n), block);
    const Moments mom = sample_moments(samples);
    const double se = std::sqrt(mom.variance / static_cast<double>(samples.size()));
    const std::string name = "conditional-mean-n" + std::to_string(n) + "-k5";
    if (inner) {
      const double with_k =
          cond_moment_inner_closed_form(spec, cond, n, 1.0, InnerMomentDenominator::k)
              .value();
      const double with_k_plus_one =
          cond_moment_inner_closed_form(spec, cond, n, 1.0, InnerMomentDenominator::k_plus_one)
              .value();
      out.push_back(make_check(name + "-k-denominator-z", z_score(mom.mean, with_k, se),
                               kMeanZ * widen));
      // The (k+1) denominator must be rejected by the same data.
      out.push_back(make_check(name + "-k+1-denominator-rejected-z",
                               z_score(mom.mean, with_k_plus_one, se), kMeanZ * widen,
                               Comparison::at_least));
    } else {
      const double quad = cond_moment(spec, cond, n, 1.0).value();
      const double appell = cond_moment_outer_appell(spec, cond, n, 1.0);
      out.push_back(make_check(name + "-z", z_score(mom.mean, quad, se), kMeanZ * widen));
      out.push_back(make_check(name + "-appell-rel-diff",
                               std::fabs(appell - quad) / std::fabs(quad), kAppellRelTol));
    }
  }
}

void interference_suite(const SimConfig& sim, double widen, std::vector<CheckResult>& out) {
  SimConfig big = derived(sim, 30);
  big.trials = sim.trials * 10;
  {
    const NetworkSpec spec(3, 1.0, 10);
    MetricConfig cfg;
    cfg.p = 0.5;
    cfg.alpha = 2.0;
    const double exact = mean_interference(spec, cfg).value();
    const auto s = mc::simulate_interference(spec, cfg, big);
    out.push_back(make_check("interference-mean-rel-err-d3-a2",
                             std::fabs(s.mean - exact) / exact, kInterferenceRelTol * widen));
    out.push_back(make_check("interference-trimmed-mean-d3-a2", *s.trimmed_mean, exact,
                             Comparison::report));
  }
  {
    const NetworkSpec spec(2, 1.0, 10);
    MetricConfig cfg;
    cfg.p = 0.0;
    const auto samples = mc::simulate_interference_samples(spec, cfg, derived(sim, 31));
    const double peak = *std::max_element(samples.begin(), samples.end());
    out.push_back(make_check("interference-p0-max", peak, 0.0));
  }
  {
    const NetworkSpec spec(2, 1.0, 10);
    MetricConfig cfg;
    cfg.p = 0.5;
    cfg.alpha = 0.0;
    const auto s = mc::simulate_interference(spec, cfg, derived(sim, 32));
    const double exact = cfg.p * static_cast<double>(spec.nodes());
    out.push_back(make_check("interference-alpha0-z", z_score(s.mean, exact, s.standard_error()),
                             kMeanZ * widen));
  }
  {
    const NetworkSpec spec(2, 2.0, 10);
    MetricConfig cfg;
    cfg.p = 0.5;
    cfg.alpha = 4.0;
    cfg.pathloss = PathLoss::bounded;
    const double exact = mean_interference(spec, cfg).value();
    const auto s = mc::simulate_interference(spec, cfg, derived(sim, 33));
    out.push_back(make_check("interference-bounded-z-d2-a4-R2",
                             z_score(s.mean, exact, s.standard_error()), kMeanZ * widen));
  }
}

void outage_suite(const SimConfig& sim, double widen, std::vector<CheckResult>& out) {
  constexpr std::array<double, 7> kThetas{0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0};
  for (const std::int64_t nodes : {std::int64_t{5}, std::int64_t{10}}) {
    const NetworkSpec spec(2, 1.0, nodes);
    MetricConfig cfg;
    cfg.p = 0.35;
    cfg.alpha = 4.0;
    const auto sweep = mc::simulate_outage_sweep(spec, cfg, kThetas, derived(sim, 40 + nodes));
    for (std::size_t i = 0; i < kThetas.size(); ++i) {
      cfg.theta = kThetas[i];
      const double bound = outage_lower_bound(spec, cfg);
      const double f = sweep[i].mean;
      const double sigma = std::sqrt(f * (1.0 - f) / static_cast<double>(sweep[i].count));
      const std::string name = "N" + std::to_string(nodes) + "-theta" + fmt(kThetas[i]);
      // (bound - f) / sigma must not exceed the allowed number of sigmas.
      const double excess = sigma > 0.0 ? (bound - f) / sigma
                                        : (bound > f ? std::numeric_limits<double>::infinity()
                                                     : -std::numeric_limits<double>::infinity());
      out.push_back(make_check("outage-above-bound-sigmas-" + name, excess,
                               kOutageSigmas * widen));
      if (nodes == 5 && i == 0)
        out.push_back(make_check("outage-bound-gap-" + name, f - bound, kOutageTightGap));
    }
  }

  const NetworkSpec spec(2, 1.0, 25);
  MetricConfig cfg;
  cfg.alpha = 4.0;
  cfg.n0 = 0.01;
  struct Point {
    std::int64_t n;
    double theta;
  };
  constexpr std::array<Point, 3> kPoints{{{1, 1e4}, {5, 1e3}, {10, 300.0}}};
  for (std::size_t i = 0; i < kPoints.size(); ++i) {
    cfg.theta = kPoints[i].theta;
    const double exact = connectivity_prob(spec, cfg, kPoints[i].n);
    const auto s = mc::simulate_connectivity(spec, cfg, kPoints[i].n, derived(sim, 50 + i));
    out.push_back(make_check("connectivity-abs-err-N25-n" + std::to_string(kPoints[i].n) +
                                 "-theta" + fmt(kPoints[i].theta),
                             std::fabs(s.mean - exact), kConnectivityAbsTol * widen));
  }
}

void cond_ppp_suite(const SimConfig& sim, double widen, std::vector<CheckResult>& out) {
  const double ks_crit = mc::ks_critical_value(static_cast<std::size_t>(sim.trials), kKsAlpha) *
                         widen;
  for (const std::int64_t n : {std::int64_t{1}, std::int64_t{5}, std::int64_t{10}}) {
    const ConditionedPppQuery q(3.18, 2, 1.0, 10, n);
    const std::string name = "lambda3.18-d2-N10-n" + std::to_string(n);
    const double mass = specfun::integrate_checked(
        [&q](double r) { return conditioned_ppp_pdf(q, r); }, 0.0, q.radius(),
        {1e-13, 1e-12, 60});
    out.push_back(make_check("cond-ppp-normalization-" + name, std::fabs(mass - 1.0),
                             kNormalizationTol));
    const auto result = mc::simulate_conditioned_ppp(q, derived(sim, 60 + n));
    out.push_back(make_check("cond-ppp-ks-" + name, *result.summary.ks_statistic, ks_crit));
  }
  {
    // At least one point: the nearest-point law of a PPP truncated to the ball.
    const double lambda = 1.0;
    const ConditionedPppQuery q(lambda, 2, 1.0, 1, 1);
    const double total = -std::expm1(-q.window_mean());
    const auto result = mc::simulate_conditioned_ppp(q, derived(sim, 71));
    const double ks = ks_against(result.samples, [&](double r) {
      return -std::expm1(-lambda * unit_ball_volume(2) * r * r) / total;
    });
    out.push_back(make_check("cond-ppp-ks-truncated-nearest-d2-N1", ks, ks_crit));
  }
  {
    // Conditioning is nearly vacuous when the window holds ~314 points.
    const ConditionedPppQuery q(100.0, 2, 1.0, 10, 5);
    const auto result = mc::simulate_conditioned_ppp(q, derived(sim, 72));
    const double ks = ks_against(result.samples, [](double r) {
      return 1.0 - ppp_limit_ccdf(100.0, 2, 5, r);
    });
    out.push_back(make_check("cond-ppp-ks-dense-vs-ppp-limit-n5", ks, ks_crit));
  }
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "distances") return Suite::distances;
  if (name == "interference") return Suite::interference;
  if (name == "outage") return Suite::outage;
  if (name == "cond-ppp") return Suite::cond_ppp;
  if (name == "all") return Suite::all;
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::distances:
      return "distances";
    case Suite::interference:
      return "interference";
    case Suite::outage:
      return "outage";
    case Suite::cond_ppp:
      return "cond-ppp";
    case Suite::all:
      return "all";
  }
  return "unknown";
}

CheckResult make_check(std::string name, double statistic, double threshold,
                       Comparison comparison) {
  bool passed = true;
  switch (comparison) {
    case Comparison::at_most:
      passed = statistic <= threshold;
      break;
    case Comparison::at_least:
      passed = statistic >= threshold;
      break;
    case Comparison::report:
      break;
  }
  return {std::move(name), statistic, threshold, comparison, passed};
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

double threshold_widening(std::int64_t trials) {
  if (trials >= kUnderpoweredTrials) return 1.0;
  return std::sqrt(static_cast<double>(kUnderpoweredTrials) / static_cast<double>(trials));
}

double chi_square_critical_1pct(int dof) {
  if (dof < 1) throw DomainError("chi_square_critical_1pct: dof must be >= 1");
  constexpr double kZ99 = 2.3263478740408408;
  const double k = dof;
  const double h = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - h + kZ99 * std::sqrt(h), 3.0);
}

ValidationReport run_validation(Suite suite, const mc::SimConfig& sim) {
  sim.validate();
  const double widen = threshold_widening(sim.trials);
  ValidationReport report;
  if (widen > 1.0) {
    report.checks.push_back(make_check("underpowered-trials-threshold-factor", widen,
                                       static_cast<double>(kUnderpoweredTrials),
                                       Comparison::report));
  }
  const bool all = suite == Suite::all;
  if (all || suite == Suite::distances) distance_suite(sim, widen, report.checks);
  if (all || suite == Suite::interference) interference_suite(sim, widen, report.checks);
  if (all || suite == Suite::outage) outage_suite(sim, widen, report.checks);
  if (all || suite == Suite::cond_ppp) cond_ppp_suite(sim, widen, report.checks);
  return report;
}

}  // namespace bppdist
