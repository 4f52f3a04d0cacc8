#include <algorithm>
#include <cmath>
#include <vector>

#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/montecarlo.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bppdist;
using namespace bppdist::mc;

namespace {

SimConfig sim(std::uint64_t seed, std::int64_t trials, int workers = 1) {
  SimConfig s;
  s.seed = seed;
  s.trials = trials;
  s.workers = workers;
  return s;
}

}  // namespace

TEST_CASE("sim config validation") {
  CHECK_THROWS_AS(sim(1, 0).validate(), DomainError);
  CHECK_THROWS_AS(sim(1, 10, 0).validate(), DomainError);
}

TEST_CASE("ks statistic on plug-in quantiles and degenerate samples") {
  std::vector<double> u(1000);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (i + 0.5) / 1000.0;
  CHECK(ks_test(u, [](double x) { return x; }) <= 1.0 / 1000.0);

  const NthNeighborQuery q(NetworkSpec(2, 1.0, 10), 3);
  std::vector<double> r(1000);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = quantile_rn(q, (i + 0.5) / 1000.0);
  CHECK(ks_test(r, [&q](double x) { return cdf_rn(q, x); }) <= 1.0 / 1000.0 + 1e-9);

  const std::vector<double> zeros(50, 0.0);
  CHECK(ks_test(zeros, [](double x) { return x; }) == 1.0);
  CHECK_THROWS_AS(ks_test(std::vector<double>{}, [](double x) { return x; }), DomainError);
  CHECK_THROWS_AS(ks_test(std::vector<double>{0.5, 0.1}, [](double x) { return x; }),
                  DomainError);
}

TEST_CASE("ks critical value") {
  CHECK(std::fabs(ks_critical_value(100000) - 0.005145039781716737) < 1e-12);
  CHECK(std::fabs(ks_critical_value(100000) * std::sqrt(1e5) - 1.63) < 0.005);
  CHECK(ks_critical_value(100, 0.05) < ks_critical_value(100, 0.01));
}

TEST_CASE("distance matrix rows are sorted and reproducible") {
  const NetworkSpec spec(2, 1.0, 10);
  const auto a = sample_bpp_distances(spec, sim(9, 2000, 3));
  const auto b = sample_bpp_distances(spec, sim(9, 2000, 3));
  REQUIRE(a.trials() == 2000);
  REQUIRE(a.nodes() == 10);
  for (std::int64_t t = 0; t < a.trials(); ++t) {
    const auto row = a.row(t);
    REQUIRE(std::is_sorted(row.begin(), row.end()));
    REQUIRE(std::equal(row.begin(), row.end(), b.row(t).begin()));
  }
  const auto c = sample_bpp_distances(spec, sim(9, 2000, 2));
  CHECK_FALSE(std::equal(a.row(1999).begin(), a.row(1999).end(), c.row(1999).begin()));
  CHECK_THROWS_AS(sample_bpp_distances(spec, sim(1, 1000), 9999), ResourceError);
  CHECK_THROWS_AS(a.column(11), DomainError);
}

TEST_CASE("single uniform radius on the line") {
  const auto m = sample_bpp_distances(NetworkSpec(1, 1.0, 1), sim(3, 100'000));
  auto col = m.column(1);
  std::sort(col.begin(), col.end());
  CHECK(ks_test(col, [](double x) { return x; }) < ks_critical_value(col.size()));
}

TEST_CASE("column means match the closed form") {
  const NetworkSpec spec(2, 1.0, 10);
  const auto m = sample_bpp_distances(spec, sim(21, 100'000, 2));
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto col = m.column(n);
    const auto s = summarize(col, 21);
    CAPTURE(n);
    CHECK(std::fabs(s.mean - mean_rn(NthNeighborQuery(spec, n))) < 4.0 * s.standard_error());
  }
}

TEST_CASE("summarize") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(x, 5);
  CHECK(s.count == 4);
  CHECK(s.mean == 2.5);
  CHECK(std::fabs(s.variance - 5.0 / 3.0) < 1e-15);
  CHECK_FALSE(s.ks_statistic.has_value());
  const Cdf uniform4 = [](double v) { return std::clamp(v / 4.0, 0.0, 1.0); };
  const auto k = summarize(x, 5, &uniform4);
  REQUIRE(k.ks_statistic.has_value());
  CHECK(*k.ks_statistic >= 0.0);
  CHECK(*k.ks_statistic <= 1.0);
  CHECK_THROWS_AS(summarize(std::vector<double>{}, 1), DomainError);
}

TEST_CASE("interference edge cases") {
  const NetworkSpec spec(2, 1.0, 10);
  MetricConfig cfg;
  cfg.p = 0.0;
  const auto silent = simulate_interference_samples(spec, cfg, sim(1, 1000));
  CHECK(std::all_of(silent.begin(), silent.end(), [](double v) { return v == 0.0; }));

  cfg.p = 0.5;
  cfg.alpha = 0.0;
  const auto flat = simulate_interference(spec, cfg, sim(2, 20'000));
  CHECK(std::fabs(flat.mean - 5.0) < 4.0 * flat.standard_error());
  CHECK(std::fabs(flat.variance - 2.5) < 0.1);
  REQUIRE(flat.trimmed_mean.has_value());
  CHECK(*flat.trimmed_mean <= flat.mean);
}

TEST_CASE("interference results depend only on seed and worker count") {
  const NetworkSpec spec(3, 1.0, 10);
  MetricConfig cfg;
  cfg.p = 0.5;
  cfg.alpha = 2.0;
  const auto a = simulate_interference_samples(spec, cfg, sim(77, 5000, 4));
  const auto b = simulate_interference_samples(spec, cfg, sim(77, 5000, 4));
  CHECK(a == b);
}

TEST_CASE("outage frequency limits") {
  const NetworkSpec spec(2, 1.0, 10);
  MetricConfig cfg;
  cfg.p = 1.0;
  cfg.alpha = 4.0;
  const std::vector<double> thetas{1e-12, 1e12};
  const auto sweep = simulate_outage_sweep(spec, cfg, thetas, sim(4, 5000));
  CHECK(sweep[0].mean == 0.0);
  CHECK(sweep[1].mean == 1.0);
  cfg.theta = 1e12;
  CHECK(simulate_outage(spec, cfg, sim(4, 5000)).mean == 1.0);
}

TEST_CASE("connectivity frequency tracks the analytic probability") {
  const NetworkSpec spec(2, 1.0, 25);
  MetricConfig cfg;
  cfg.alpha = 4.0;
  cfg.n0 = 0.01;
  cfg.theta = 1e3;
  const auto s = simulate_connectivity(spec, cfg, 5, sim(8, 50'000));
  CHECK(std::fabs(s.mean - connectivity_prob(spec, cfg, 5)) < 0.01);
  cfg.theta = 10.0;
  CHECK(simulate_connectivity(spec, cfg, 25, sim(8, 1000)).mean == 1.0);
}

TEST_CASE("conditioned PPP rejection sampler") {
  const ConditionedPppQuery q(3.18, 2, 1.0, 10, 5);
  const auto r = simulate_conditioned_ppp(q, sim(12, 20'000, 2));
  CHECK(r.samples.size() == 20'000);
  CHECK(r.attempts >= 20'000);
  REQUIRE(r.summary.ks_statistic.has_value());
  CHECK(*r.summary.ks_statistic < ks_critical_value(20'000));
  // Mean attempts per acceptance is the inverse acceptance probability.
  const double rate = 20'000.0 / static_cast<double>(r.attempts);
  CHECK(std::fabs(rate - conditioned_ppp_acceptance(q)) < 0.02);

  const ConditionedPppQuery hopeless(0.1, 2, 1.0, 30, 1);
  CHECK_THROWS_AS(simulate_conditioned_ppp(hopeless, sim(1, 10)), ResourceError);
}

TEST_CASE("run_blocks concatenates in block order") {
  const auto out = run_blocks(sim(0, 10, 3), [](int b, std::int64_t first, std::int64_t count,
                                                RandomStream&) {
    std::vector<double> v;
    for (std::int64_t i = 0; i < count; ++i) v.push_back(static_cast<double>(first + i) + b * 0.0);
    return v;
  });
  REQUIRE(out.size() == 10);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<double>(i));
  CHECK_THROWS_AS(run_blocks(sim(0, 4, 2),
                             [](int, std::int64_t, std::int64_t, RandomStream&)
                                 -> std::vector<double> { throw NumericalError("boom"); }),
                  NumericalError);
}
