#pragma once

#include <span>

namespace knotint::stats {

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile(std::span<const double> values, double q);
double median(std::span<const double> values);
double mean(std::span<const double> values);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double iqr() const noexcept { return q3 - q1; }
};
Quartiles quartiles(std::span<const double> values);

// Pearson correlation; 0 when either sample has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

struct RankTest {
  double u = 0.0;  // Mann-Whitney U of the first sample
  double z = 0.0;
  double p = 1.0;  // one-sided
};
// One-sided Mann-Whitney test of "x tends to be smaller than y", normal
// approximation with tie correction and continuity correction.
RankTest mann_whitney_less(std::span<const double> x, std::span<const double> y);

double normal_cdf(double z);

}  // namespace knotint::stats
