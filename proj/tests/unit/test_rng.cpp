#include <cmath>
#include <set>
#include <vector>

#include "bppdist/rng.hpp"
#include "doctest.h"

using namespace bppdist;

TEST_CASE("streams are reproducible and split streams differ") {
  RandomStream a = RandomStream::split(42, 0);
  RandomStream b = RandomStream::split(42, 0);
  RandomStream c = RandomStream::split(42, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_stream_seed(7, i));
  CHECK(seeds.size() == 1000);
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(8, 0));
}

TEST_CASE("uniform stays in the open unit interval with the right moments") {
  RandomStream rng(1);
  double sum = 0.0;
  double sum2 = 0.0;
  constexpr int kN = 200'000;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::fabs(sum / kN - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / kN));
  CHECK(std::fabs(sum2 / kN - 1.0 / 3.0) < 0.005);
}

TEST_CASE("normal moments") {
  RandomStream rng(2);
  constexpr int kN = 200'000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::fabs(sum / kN) < 5.0 / std::sqrt(kN));
  CHECK(std::fabs(sum2 / kN - 1.0) < 5.0 * std::sqrt(2.0 / kN));
}

TEST_CASE("poisson mean and variance across regimes") {
  for (double mean : {0.0, 0.7, 9.99, 750.0, 1500.0, 5000.0}) {
    RandomStream rng(3);
    constexpr int kN = 40'000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < kN; ++i) {
      const auto k = static_cast<double>(rng.poisson(mean));
      sum += k;
      sum2 += k * k;
    }
    const double m = sum / kN;
    const double v = sum2 / kN - m * m;
    CAPTURE(mean);
    if (mean == 0.0) {
      CHECK(m == 0.0);
      continue;
    }
    CHECK(std::fabs(m - mean) < 5.0 * std::sqrt(mean / kN));
    CHECK(std::fabs(v / mean - 1.0) < 0.05);
  }
}

TEST_CASE("bernoulli frequency") {
  RandomStream rng(4);
  int hits = 0;
  constexpr int kN = 100'000;
  for (int i = 0; i < kN; ++i) hits += rng.bernoulli(0.35) ? 1 : 0;
  CHECK(std::fabs(hits / static_cast<double>(kN) - 0.35) < 5.0 * std::sqrt(0.35 * 0.65 / kN));
  CHECK_FALSE(rng.bernoulli(0.0));
  CHECK(rng.bernoulli(1.0));
}
