#include <doctest.h>

#include <random>
#include <vector>

#include "knotint/stats.hpp"

using namespace knotint::stats;

TEST_CASE("quantiles interpolate between order statistics") {
  const std::vector<double> v{7, 1, 3, 5};
  CHECK(quantile(v, 0.0) == 1.0);
  CHECK(quantile(v, 1.0) == 7.0);
  CHECK(median(v) == 4.0);
  const auto q = quartiles(v);
  CHECK(q.q1 == doctest::Approx(2.5));
  CHECK(q.q3 == doctest::Approx(5.5));
  CHECK(q.iqr() == doctest::Approx(3.0));
  const std::vector<double> one{0.25};
  CHECK(quartiles(one).q1 == 0.25);
  CHECK(quartiles(one).q3 == 0.25);
}

TEST_CASE("pearson correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{2, 4, 6, 8, 10};
  const std::vector<double> down{5, 4, 3, 2, 1};
  const std::vector<double> flat{3, 3, 3, 3, 3};
  CHECK(pearson(x, up) == doctest::Approx(1.0));
  CHECK(pearson(x, down) == doctest::Approx(-1.0));
  CHECK(pearson(x, flat) == 0.0);
  const std::vector<double> y{2, 1, 4, 3, 5};
  CHECK(pearson(x, y) == doctest::Approx(0.8));
}

TEST_CASE("rank test statistic matches pair counting") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(5 + trial % 7), y(4 + trial % 5);
    for (auto& v : x) v = pick(rng);
    for (auto& v : y) v = pick(rng) + 1;
    double u = 0;
    for (double a : x) {
      for (double b : y) u += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
    }
    CHECK(mann_whitney_less(x, y).u == doctest::Approx(u));
  }
}

TEST_CASE("rank test p-values") {
  const std::vector<double> lo{1, 2, 3, 4, 5}, hi{6, 7, 8, 9, 10};
  const auto r = mann_whitney_less(lo, hi);
  CHECK(r.u == 0.0);
  CHECK(r.p == doctest::Approx(0.00609).epsilon(0.01));
  CHECK(mann_whitney_less(hi, lo).p > 0.99);
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
}
