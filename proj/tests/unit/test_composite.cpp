#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tseval/composite.hpp"

using namespace tseval;

TEST_CASE("cap_score: examples") {
  CHECK(cap_score({0.2569, 0.4528, 0.4512, 1.1001}) == 0.56525);
  CHECK(cap_score({0, 0, 0, 0}) == 0.0);
  CHECK(cap_score({1, 1, 1, 1}) == 1.0);
  CHECK_THROWS_AS(cap_score({0.1, -0.1, 0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(cap_score({std::nan(""), 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("aggregate_splits: examples") {
  const SplitScores a{Split::internal, {0.2, 0.3, 0.4, 1.0}, 4};
  const SplitScores b{Split::external, {0.4, 0.3, 0.2, 2.0}, 4};
  const auto same = aggregate_splits(a, {Split::external, a.metrics, 7});
  CHECK(same.bleu4 == a.metrics.bleu4);
  CHECK(same.cider == a.metrics.cider);
  const auto mean = aggregate_splits(a, b);
  CHECK(std::abs(mean.bleu4 - 0.3) < 1e-15);
  CHECK(std::abs(mean.cider - 1.5) < 1e-15);

  const SplitScores w1{Split::internal, {0.0, 0, 0, 0}, 1};
  const SplitScores w3{Split::external, {0.4, 0, 0, 0}, 3};
  CHECK(std::abs(aggregate_splits(w1, w3, AggregationMode::weighted).bleu4 - 0.3) < 1e-15);
}

TEST_CASE("aggregate_splits: empty splits are excluded") {
  const SplitScores a{Split::internal, {0.2, 0.3, 0.4, 1.0}, 4};
  const SplitScores none{Split::external, {}, 0};
  const auto only = aggregate_splits(a, none);
  CHECK(only.bleu4 == 0.2);
  CHECK(only.cider == 1.0);
  const auto zero = aggregate_splits({Split::internal, {}, 0}, none);
  CHECK(zero.bleu4 == 0.0);
}

TEST_CASE("s2: examples and errors") {
  CHECK(s2(0.5, 0.5).s2 == 0.5);
  CHECK(s2(0.4, 0.6).s2 == 0.5);
  const auto f = s2(0.4, 0.6);
  const auto p = f.percent();
  CHECK(p.s2 == f.s2 * 100.0);
  CHECK(p.acc == f.acc * 100.0);
  CHECK(p.cap_score == f.cap_score * 100.0);
  CHECK_THROWS_AS(s2(0.5, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(s2(0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(s2(-0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(s2(std::numeric_limits<double>::infinity(), 0.5), std::invalid_argument);
}

TEST_CASE("composite properties") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng), y = u(rng), z = u(rng);
    CHECK(std::abs(cap_score({x, x, x, x}) - x) < 1e-15);
    CHECK(s2(x, y).s2 == s2(y, x).s2);
    CHECK(std::abs(s2(x + z, y).s2 - s2(x, y).s2 - z / 2) < 1e-15);
  }
}
