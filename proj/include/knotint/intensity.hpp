#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "knotint/core.hpp"

namespace knotint {

struct IntensitySettings {
  CoreSettings core;
  unsigned workers = 0;  // 0 = hardware concurrency
};

enum class OpeningStatus { kCore, kTrivial, kUnresolved };

struct OpeningResult {
  std::size_t edge = 0;
  OpeningStatus status = OpeningStatus::kTrivial;
  KnotCore core;  // chain indices; meaningful only for kCore
};

// Per-vertex counts of openings whose core contains the vertex. Values are
// counts / N.
class IntensityDistribution {
 public:
  IntensityDistribution() = default;
  IntensityDistribution(std::vector<std::uint32_t> counts, KnotLabel label);

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint32_t count(std::size_t v) const { return counts_.at(v); }
  const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
  double value(std::size_t v) const;
  std::vector<double> values() const;
  const KnotLabel& label() const noexcept { return label_; }
  bool all_zero() const noexcept;

  std::vector<OpeningResult> openings;

 private:
  std::vector<std::uint32_t> counts_;
  KnotLabel label_;
};

// Seed of the opening at `edge`, keyed to the edge's coordinates so that a
// cyclic relabeling of the curve leaves each opening's randomness unchanged.
std::uint64_t opening_seed(const PLCurve& curve, std::size_t edge, std::uint64_t seed);

// Throws TrivialCurve or UnresolvedType when the closed curve is the unknot
// or off-catalog.
IntensityDistribution intensity_distribution(const PLCurve& curve, std::uint64_t seed,
                                             const IntensitySettings& settings = {});

// Adds the core of one opening to per-vertex counts of the parent curve.
void accumulate_core(std::vector<std::uint32_t>& counts, const OpenChain& chain, const KnotCore& core);

// Exact coarea function t -> (1/N) sum_v min(value_v, t). Breakpoints are
// j/N for the distinct counts j together with 0 and 1.
class Fingerprint {
 public:
  explicit Fingerprint(const IntensityDistribution& dist);

  std::size_t size() const noexcept { return n_; }
  // Breakpoint counts j, ascending, starting at 0 and ending at N.
  const std::vector<std::uint32_t>& breakpoint_counts() const noexcept { return steps_; }
  std::vector<double> breakpoints() const;
  // N^2 * f(j/N) at each breakpoint, exact.
  const std::vector<std::uint64_t>& scaled_values() const noexcept { return scaled_; }
  std::vector<double> values() const;
  double operator()(double t) const;
  double density() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> steps_;
  std::vector<std::uint64_t> scaled_;
};

Fingerprint fingerprint(const IntensityDistribution& dist);
double density(const IntensityDistribution& dist);

std::size_t default_window(std::size_t n);
// Strict local maxima of the circular moving average over `window` vertices;
// a plateau is reported once, at its smallest index.
std::vector<std::size_t> local_maxima(const IntensityDistribution& dist, std::size_t window);
std::vector<std::size_t> local_maxima(std::span<const std::uint32_t> counts, std::size_t window);

void to_json(nlohmann::json& j, const IntensityDistribution& dist);

}  // namespace knotint
