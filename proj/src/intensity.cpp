#include "knotint/intensity.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"
#include "knotint/parallel.hpp"
#include "knotint/random.hpp"

namespace knotint {

IntensityDistribution::IntensityDistribution(std::vector<std::uint32_t> counts, KnotLabel label)
    : counts_(std::move(counts)), label_(std::move(label)) {
  for (auto c : counts_) {
    if (c > counts_.size()) throw IndexOutOfRange("intensity count exceeds the number of openings");
  }
}

double IntensityDistribution::value(std::size_t v) const {
  return static_cast<double>(count(v)) / static_cast<double>(size());
}

std::vector<double> IntensityDistribution::values() const {
  std::vector<double> out(size());
  for (std::size_t v = 0; v < size(); ++v) out[v] = value(v);
  return out;
}

bool IntensityDistribution::all_zero() const noexcept {
  return std::ranges::all_of(counts_, [](auto c) { return c == 0; });
}

std::uint64_t opening_seed(const PLCurve& curve, std::size_t edge, std::uint64_t seed) {
  return derive_seed(seed, StreamTag::kOpening, edge_key(curve, edge));
}

void accumulate_core(std::vector<std::uint32_t>& counts, const OpenChain& chain, const KnotCore& core) {
  for (std::size_t k = core.first; k <= core.last; ++k) ++counts.at(chain.parent_vertex(k, counts.size()));
}

namespace {

OpeningResult analyse_opening(const PLCurve& curve, std::size_t edge, std::uint64_t seed,
                              const CoreSettings& settings) {
  OpeningResult r;
  r.edge = edge;
  try {
    r.core = knot_core(open_at_edge(curve, edge), opening_seed(curve, edge, seed), settings);
    r.status = OpeningStatus::kCore;
  } catch (const TrivialChain&) {
    r.status = OpeningStatus::kTrivial;
  } catch (const UnresolvedType&) {
    r.status = OpeningStatus::kUnresolved;
  }
  return r;
}

}  // namespace

IntensityDistribution intensity_distribution(const PLCurve& curve, std::uint64_t seed,
                                             const IntensitySettings& settings) {
  if (!curve.closed()) throw DegenerateCurve("intensity needs a closed curve");
  const auto label = classify_curve(curve, derive_seed(seed, StreamTag::kClassify, 0));
  if (label.is_unknot()) throw TrivialCurve("curve is unknotted");
  if (label.is_other()) throw UnresolvedType("curve type " + label.name() + " is not in the catalog");

  const std::size_t n = curve.size();
  std::vector<OpeningResult> results(n);
  parallel_for(n, settings.workers, [&](std::size_t e) { results[e] = analyse_opening(curve, e, seed, settings.core); });

  std::vector<std::uint32_t> counts(n, 0);
  for (const auto& r : results) {
    if (r.status == OpeningStatus::kCore) accumulate_core(counts, open_at_edge(curve, r.edge), r.core);
  }
  IntensityDistribution dist(std::move(counts), label);
  dist.openings = std::move(results);
  return dist;
}

Fingerprint::Fingerprint(const IntensityDistribution& dist) : n_(dist.size()) {
  if (n_ == 0) throw IndexOutOfRange("empty distribution");
  steps_ = dist.counts();
  steps_.push_back(0);
  steps_.push_back(static_cast<std::uint32_t>(n_));
  std::ranges::sort(steps_);
  steps_.erase(std::unique(steps_.begin(), steps_.end()), steps_.end());
  for (auto j : steps_) {
    std::uint64_t s = 0;
    for (auto k : dist.counts()) s += std::min(k, j);
    scaled_.push_back(s);
  }
}

std::vector<double> Fingerprint::breakpoints() const {
  std::vector<double> out;
  for (auto j : steps_) out.push_back(static_cast<double>(j) / static_cast<double>(n_));
  return out;
}

std::vector<double> Fingerprint::values() const {
  const double nn = static_cast<double>(n_) * static_cast<double>(n_);
  std::vector<double> out;
  for (auto s : scaled_) out.push_back(static_cast<double>(s) / nn);
  return out;
}

double Fingerprint::operator()(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  const double n = static_cast<double>(n_);
  const double nt = t * n;
  // Locate the segment [j_a, j_b] containing N t and interpolate linearly.
  auto it = std::ranges::upper_bound(steps_, nt, {}, [](auto j) { return static_cast<double>(j); });
  if (it == steps_.end()) return static_cast<double>(scaled_.back()) / (n * n);
  const std::size_t b = static_cast<std::size_t>(it - steps_.begin());
  const std::size_t a = b - 1;
  const double ja = steps_[a], jb = steps_[b];
  const double fa = static_cast<double>(scaled_[a]), fb = static_cast<double>(scaled_[b]);
  return (fa + (fb - fa) * (nt - ja) / (jb - ja)) / (n * n);
}

double Fingerprint::density() const {
  const double n = static_cast<double>(n_);
  return static_cast<double>(scaled_.back()) / (n * n);
}

Fingerprint fingerprint(const IntensityDistribution& dist) { return Fingerprint(dist); }

double density(const IntensityDistribution& dist) {
  std::uint64_t s = 0;
  for (auto k : dist.counts()) s += k;
  const double n = static_cast<double>(dist.size());
  return static_cast<double>(s) / (n * n);
}

std::size_t default_window(std::size_t n) { return std::max<std::size_t>(3, n / 20); }

std::vector<std::size_t> local_maxima(std::span<const std::uint32_t> counts, std::size_t window) {
  if (window == 0) throw IndexOutOfRange("window must be at least 1");
  const std::size_t n = counts.size();
  if (n == 0) return {};
  // Window sums stand in for averages; both have the same maxima.
  const std::size_t before = (window - 1) / 2;
  std::vector<std::uint64_t> sums(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < window; ++k) sums[v] += counts[(v + n * window - before + k) % n];
  }

  std::size_t start = n;
  for (std::size_t v = 0; v < n; ++v) {
    if (sums[v] != sums[(v + n - 1) % n]) {
      start = v;
      break;
    }
  }
  if (start == n) return {};

  std::vector<std::size_t> peaks;
  for (std::size_t off = 0; off < n;) {
    const std::size_t head = (start + off) % n;
    std::size_t len = 1;
    std::size_t smallest = head;
    while (len < n && sums[(head + len) % n] == sums[head]) {
      smallest = std::min(smallest, (head + len) % n);
      ++len;
    }
    const auto left = sums[(head + n - 1) % n];
    const auto right = sums[(head + len) % n];
    if (left < sums[head] && right < sums[head]) peaks.push_back(smallest);
    off += len;
  }
  std::ranges::sort(peaks);
  return peaks;
}

std::vector<std::size_t> local_maxima(const IntensityDistribution& dist, std::size_t window) {
  return local_maxima(dist.counts(), window);
}

void to_json(nlohmann::json& j, const IntensityDistribution& dist) {
  const auto fp = fingerprint(dist);
  j = nlohmann::json{{"N", dist.size()},
                     {"label", dist.label().name()},
                     {"values", dist.values()},
                     {"density", fp.density()},
                     {"maxima", local_maxima(dist, default_window(dist.size()))}};
}

}  // namespace knotint
