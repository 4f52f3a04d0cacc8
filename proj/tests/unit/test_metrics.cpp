#include <cmath>
#include <vector>

#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/metrics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bppdist;
using bppdist::test::close_abs;
using bppdist::test::close_rel;

namespace {

MetricConfig make_cfg(double p, double alpha, PathLoss law = PathLoss::singular) {
  MetricConfig cfg;
  cfg.p = p;
  cfg.alpha = alpha;
  cfg.pathloss = law;
  return cfg;
}

}  // namespace

TEST_CASE("path-loss names") {
  CHECK(parse_path_loss("singular") == PathLoss::singular);
  CHECK(parse_path_loss("bounded") == PathLoss::bounded);
  CHECK(to_string(PathLoss::bounded) == "bounded");
  CHECK_THROWS_AS(parse_path_loss("Bounded"), DomainError);
}

TEST_CASE("config validation") {
  MetricConfig cfg;
  cfg.p = 1.2;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = MetricConfig{};
  cfg.theta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = MetricConfig{};
  cfg.n0 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("hop energy is the alpha moment") {
  const NetworkSpec spec(2, 3.0, 10);
  for (std::int64_t n : {1, 4, 10}) {
    CHECK(mean_hop_energy(spec, n, 3.5).value() ==
          moment_rn(NthNeighborQuery(spec, n), 3.5).value());
  }
}

TEST_CASE("mean interference, singular law") {
  CHECK(close_rel(mean_interference(NetworkSpec(3, 1.0, 10), make_cfg(0.5, 2.0)).value(), 15.0,
                  1e-14));
  CHECK(mean_interference(NetworkSpec(2, 1.0, 10), make_cfg(0.5, 2.0)).is_infinite());
  CHECK(mean_interference(NetworkSpec(2, 1.0, 10), make_cfg(0.5, 4.0)).is_infinite());
  CHECK(mean_interference(NetworkSpec(3, 1.0, 10), make_cfg(0.0, 2.0)).value() == 0.0);
}

TEST_CASE("interference equals p times the sum of negative moments") {
  for (int d : {2, 3, 4}) {
    for (double alpha : {0.5, 1.3, 1.9}) {
      if (!(d > alpha)) continue;
      const NetworkSpec spec(d, 1.7, 40);
      double sum = 0.0;
      for (std::int64_t n = 1; n <= spec.nodes(); ++n)
        sum += moment_rn(NthNeighborQuery(spec, n), -alpha).value();
      CAPTURE(d);
      CAPTURE(alpha);
      CHECK(close_rel(0.3 * sum, mean_interference(spec, make_cfg(0.3, alpha)).value(), 1e-9));
    }
  }
}

TEST_CASE("mean interference, bounded law") {
  // 5 * E[min(1, R^-4)] for R uniform in the disk of radius 2.
  CHECK(close_rel(
      mean_interference(NetworkSpec(2, 2.0, 10), make_cfg(0.5, 4.0, PathLoss::bounded)).value(),
      2.1875, 1e-14));
  CHECK_THROWS_AS(mean_interference(NetworkSpec(2, 1.0, 10), make_cfg(0.5, 4.0, PathLoss::bounded)),
                  DomainError);
  for (int d : {1, 2, 3}) {
    const NetworkSpec spec(d, 3.0, 10);
    const double at = mean_interference(spec, make_cfg(0.4, d, PathLoss::bounded)).value();
    const double below =
        mean_interference(spec, make_cfg(0.4, d - 1e-6, PathLoss::bounded)).value();
    const double above =
        mean_interference(spec, make_cfg(0.4, d + 1e-6, PathLoss::bounded)).value();
    // The two-sided limit, estimated symmetrically, meets the log branch.
    CHECK(close_abs(0.5 * (below + above), at, 1e-8));
    CHECK(close_abs(below, at, 1e-5));
    CHECK(close_abs(above, at, 1e-5));
  }
}

TEST_CASE("gamma ratio partial sums") {
  CHECK(close_rel(gamma_ratio_partial_sum(5, 2.0 / 3.0), 5.0161194785680048284, 1e-13));
  for (int i = 1; i <= 9; ++i) {
    const double x = i / 10.0;
    double sum = 0.0;
    for (std::int64_t k = 1; k <= 200; ++k) {
      sum += std::exp(std::lgamma(k - x) - std::lgamma(static_cast<double>(k)));
      if (k % 17 == 0 || k == 200) {
        CAPTURE(x);
        CAPTURE(k);
        CHECK(close_rel(gamma_ratio_partial_sum(k, x), sum, 1e-10));
      }
    }
  }
  CHECK_THROWS_AS(gamma_ratio_partial_sum(0, 0.5), DomainError);
  CHECK_THROWS_AS(gamma_ratio_partial_sum(3, 1.0), DomainError);
}

TEST_CASE("connectivity probability") {
  const NetworkSpec spec(2, 1.0, 25);
  MetricConfig cfg = make_cfg(1.0, 4.0);
  cfg.n0 = 0.01;
  // Every node is in range while theta <= R^-alpha / n0 = 100.
  for (double theta : {0.01, 1.0, 50.0, 100.0}) {
    cfg.theta = theta;
    for (std::int64_t n : {1, 13, 25}) CHECK(connectivity_prob(spec, cfg, n) == 1.0);
  }
  cfg.theta = 1e3;
  const double reach = std::pow(10.0, -0.25);
  CHECK(close_rel(connectivity_prob(spec, cfg, 5), cdf_rn(NthNeighborQuery(spec, 5), reach),
                  1e-15));
  cfg.n0 = 0.0;
  CHECK(connectivity_prob(spec, cfg, 25) == 1.0);
  cfg.n0 = 2.0;
  cfg.theta = 1.0;
  cfg.pathloss = PathLoss::bounded;
  CHECK(connectivity_prob(NetworkSpec(2, 3.0, 25), cfg, 1) == 0.0);
}

TEST_CASE("connectivity is nonincreasing in rank and threshold") {
  const NetworkSpec spec(2, 1.0, 25);
  MetricConfig cfg = make_cfg(1.0, 4.0);
  cfg.n0 = 0.01;
  std::vector<double> thetas;
  for (int i = 0; i <= 50; ++i) thetas.push_back(1e-2 * std::pow(1e5, i / 50.0));
  for (std::int64_t n = 1; n <= 25; ++n) {
    double prev = 2.0;
    for (double theta : thetas) {
      cfg.theta = theta;
      const double c = connectivity_prob(spec, cfg, n);
      CHECK(c <= prev);
      if (n > 1) CHECK(c <= connectivity_prob(spec, cfg, n - 1));
      prev = c;
    }
  }
}

TEST_CASE("outage lower bound") {
  MetricConfig cfg = make_cfg(0.35, 4.0);
  const NetworkSpec spec(2, 1.0, 5);
  cfg.theta = 2.0;
  CHECK(outage_lower_bound(spec, cfg) == 0.35);
  cfg.theta = 1.0;
  CHECK(outage_lower_bound(spec, cfg) == 0.35);
  cfg.theta = 1.0 - 1e-12;
  CHECK(close_abs(outage_lower_bound(spec, cfg), 0.35, 1e-9));
  cfg.theta = 0.01;
  CHECK(close_rel(outage_lower_bound(spec, cfg), 0.35 * (1.0 - std::pow(0.9, 5)), 1e-12));
  cfg.pathloss = PathLoss::bounded;
  CHECK(outage_lower_bound(NetworkSpec(2, 2.0, 5), cfg) == 0.0);
}

TEST_CASE("outage bound is nondecreasing in threshold, nodes and p") {
  for (double p : {0.1, 0.35, 0.9}) {
    for (std::int64_t nodes : {1, 5, 10, 40}) {
      double prev = -1.0;
      for (int i = 0; i <= 40; ++i) {
        MetricConfig cfg = make_cfg(p, 4.0);
        cfg.theta = 1e-3 * std::pow(1e5, i / 40.0);
        const double b = outage_lower_bound(NetworkSpec(2, 1.0, nodes), cfg);
        CHECK(b >= prev);
        CHECK(b <= p);
        CHECK(b <= outage_lower_bound(NetworkSpec(2, 1.0, nodes + 1), cfg));
        MetricConfig more = cfg;
        more.p = std::min(1.0, p + 0.05);
        CHECK(b <= outage_lower_bound(NetworkSpec(2, 1.0, nodes), more));
        prev = b;
      }
    }
  }
}
