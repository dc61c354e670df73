#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "desfa/rng.hpp"
#include "doctest.h"

using desfa::Rng;

TEST_CASE("mix64 matches the splitmix64 reference sequence") {
  // mix64(x) is the splitmix64 step for state x, so feeding it states
  // 0 and 0 + gamma must reproduce the published first two outputs for a
  // zero-seeded stream.
  CHECK(desfa::mix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(desfa::mix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("derive_seed separates streams") {
  const std::uint64_t seed = 42;
  CHECK(desfa::derive_seed(seed, 1) == 0xf054a2e0dd8ad201ULL);

  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(desfa::derive_seed(seed, s));
  CHECK(seen.size() == 1000);

  for (std::uint64_t s = 0; s < 100; ++s)
    CHECK(desfa::derive_seed(seed, s) != desfa::derive_seed(seed + 1, s));
}

TEST_CASE("bounded stays in range and covers it") {
  Rng rng(7);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto v = desfa::bounded(rng, 10);
    REQUIRE(v < 10);
    hits[static_cast<std::size_t>(v)]++;
  }
  for (int h : hits) CHECK(h > 800);  // ~1000 expected per bucket

  for (int i = 0; i < 100; ++i) CHECK(desfa::bounded(rng, 1) == 0);
}

TEST_CASE("bounded is engine-deterministic") {
  Rng a(123), b(123);
  for (int i = 0; i < 200; ++i) CHECK(desfa::bounded(a, 97) == desfa::bounded(b, 97));
}

TEST_CASE("unit_open yields values in (0, 1]") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double u = desfa::unit_open(rng);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("normal has standard moments") {
  Rng rng(5);
  const int n = 20000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = desfa::normal(rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(sd - 1.0) < 0.05);
}

TEST_CASE("shuffle permutes and is seed-deterministic") {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);

  Rng a(9);
  desfa::shuffle(v, a);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(100);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(sorted == expect);

  std::vector<int> w(100);
  std::iota(w.begin(), w.end(), 0);
  Rng b(9);
  desfa::shuffle(w, b);
  CHECK(v == w);

  std::vector<int> u(100);
  std::iota(u.begin(), u.end(), 0);
  Rng c(10);
  desfa::shuffle(u, c);
  CHECK(u != v);
}
