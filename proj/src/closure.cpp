#include "knotint/closure.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"
#include "knotint/random.hpp"

namespace knotint {

std::size_t ClosureSpectrum::count(const KnotLabel& label) const {
  for (const auto& [l, c] : counts) {
    if (l == label) return c;
  }
  return 0;
}

double ClosureSpectrum::frequency(const KnotLabel& label) const {
  return total == 0 ? 0.0 : static_cast<double>(count(label)) / static_cast<double>(total);
}

ClosureSpectrum make_spectrum(std::span<const KnotLabel> labels) {
  std::map<KnotLabel, std::size_t> tally;
  for (const auto& l : labels) ++tally[l];
  ClosureSpectrum s;
  s.total = labels.size();
  std::size_t best = 0;
  for (const auto& [l, c] : tally) {
    s.counts.emplace_back(l, c);
    if (c > best) {  // strict: ties keep the simpler label seen first
      best = c;
      s.dominant = l;
    }
  }
  return s;
}

void to_json(nlohmann::json& j, const ClosureSpectrum& s) {
  auto counts = nlohmann::json::object();
  for (const auto& [l, c] : s.counts) counts[l.name()] = c;
  j = nlohmann::json{{"M", s.total}, {"dominant", s.dominant.name()}, {"counts", std::move(counts)}};
}

BoundingSphere bounding_sphere(std::span<const Point3> points) {
  Point3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  Point3 hi = -lo;
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  BoundingSphere s;
  s.center = (lo + hi) * 0.5;
  for (const auto& p : points) s.radius = std::max(s.radius, distance(p, s.center));
  return s;
}

namespace {

Point3 closure_point_for(const BoundingSphere& sphere, Rng& rng, double factor) {
  // A chain whose vertices coincide with the centre still needs a far point.
  const double radius = factor * std::max(sphere.radius, 1e-6);
  return sphere.center + uniform_unit_vector(rng) * radius;
}

// Point m of an M-point spherical Fibonacci lattice.
Vec3 fibonacci_point(std::size_t m, std::size_t count) {
  const double z = 1.0 - (2.0 * static_cast<double>(m) + 1.0) / static_cast<double>(count);
  const double phi = static_cast<double>(m) * std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace

PLCurve uniform_closure(const OpenChain& chain, std::uint64_t seed, const ClosureSettings& settings) {
  Rng rng(derive_seed(seed, StreamTag::kClosure, 0));
  std::vector<Point3> v = chain.vertices;
  v.push_back(closure_point_for(bounding_sphere(chain.vertices), rng, settings.radius_factor));
  return PLCurve(std::move(v), true);
}

ClosureEnsemble::ClosureEnsemble(std::span<const Point3> chain, std::size_t closures, std::uint64_t seed,
                                 const ClosureSettings& settings)
    : chain_(chain.begin(), chain.end()),
      frames_(closures),
      seed_(seed),
      settings_(settings),
      sphere_(bounding_sphere(chain)) {
  if (chain_.size() < 2) throw DegenerateCurve("closure needs a chain with at least 2 vertices");
  Rng lattice_rng(derive_seed(seed_, StreamTag::kDirection, 0));
  const Mat3 rotation = uniform_rotation(lattice_rng);
  for (std::size_t m = 0; m < closures; ++m) {
    if (settings_.stratified) {
      const double radius = settings_.radius_factor * std::max(sphere_.radius, 1e-6);
      frames_[m].point = sphere_.center + rotation * fibonacci_point(m, closures) * radius;
    } else {
      Rng rng(derive_seed(seed_, StreamTag::kClosure, m));
      frames_[m].point = closure_point_for(sphere_, rng, settings_.radius_factor);
    }
    build_frame(m, 0);
  }
}

void ClosureEnsemble::build_frame(std::size_t m, std::uint64_t attempt) {
  auto& f = frames_[m];
  const std::size_t n = chain_.size();
  for (;; ++attempt) {
    if (attempt > 64) throw DegenerateProjection("no generic direction for closure " + std::to_string(m));
    Rng rng(derive_seed(seed_, StreamTag::kClosure, m));
    if (attempt > 0) rng.seed(derive_seed(derive_seed(seed_, StreamTag::kClosure, m), StreamTag::kDirection, attempt));
    uniform_unit_vector(rng);  // the closure point's draw
    f.direction = uniform_unit_vector(rng);
    f.attempt = attempt;
    const Projector proj(f.direction);
    f.projected.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.projected[i] = proj(chain_[i]);
    f.projected_point = proj(f.point);
    try {
      const auto crossings = find_crossings(f.projected, false, settings_.projection);
      f.crossings.clear();
      f.crossings.reserve(crossings.size());
      for (const auto& c : crossings) {
        const bool over_first = c.over_edge < c.under_edge;
        ChainCrossing cc;
        cc.e1 = static_cast<std::uint32_t>(over_first ? c.over_edge : c.under_edge);
        cc.e2 = static_cast<std::uint32_t>(over_first ? c.under_edge : c.over_edge);
        cc.s = over_first ? c.over_param : c.under_param;
        cc.t = over_first ? c.under_param : c.over_param;
        cc.first_over = over_first;
        cc.sign = c.sign;
        f.crossings.push_back(cc);
      }
      return;
    } catch (const DegenerateProjection&) {
    }
  }
}

bool ClosureEnsemble::try_diagram(std::size_t m, std::size_t first, std::size_t last, KnotDiagram& out) const {
  const auto& f = frames_[m];
  const auto& pts = f.projected;
  std::vector<PlacedCrossing> placed;
  const double base = static_cast<double>(first);
  for (const auto& c : f.crossings) {
    if (c.e1 < first || c.e2 + 1 > last) continue;
    const double p1 = c.e1 - base + c.s;
    const double p2 = c.e2 - base + c.t;
    placed.push_back(c.first_over ? PlacedCrossing{p1, p2, c.sign} : PlacedCrossing{p2, p1, c.sign});
  }
  const double span = static_cast<double>(last - first);
  // Closing edges: last vertex -> point, point -> first vertex.
  for (std::size_t e = first; e + 2 <= last; ++e) {
    EdgePairCrossing c;
    const auto r = test_edge_pair(pts[e], pts[e + 1], pts[last], f.projected_point, settings_.projection, c);
    if (r == PairTest::kDegenerate) return false;
    if (r == PairTest::kCross) {
      const double pe = static_cast<double>(e) - base + c.s;
      const double pc = span + c.t;
      placed.push_back(c.first_over ? PlacedCrossing{pe, pc, c.sign} : PlacedCrossing{pc, pe, c.sign});
    }
  }
  for (std::size_t e = first + 1; e < last; ++e) {
    EdgePairCrossing c;
    const auto r = test_edge_pair(pts[e], pts[e + 1], f.projected_point, pts[first], settings_.projection, c);
    if (r == PairTest::kDegenerate) return false;
    if (r == PairTest::kCross) {
      const double pe = static_cast<double>(e) - base + c.s;
      const double pc = span + 1.0 + c.t;
      placed.push_back(c.first_over ? PlacedCrossing{pe, pc, c.sign} : PlacedCrossing{pc, pe, c.sign});
    }
  }
  out = diagram_from_placed(placed, true);
  return true;
}

KnotDiagram ClosureEnsemble::diagram(std::size_t m, std::size_t first, std::size_t last) {
  if (first >= last || last >= chain_.size()) throw IndexOutOfRange("bad sub-chain range");
  if (last - first < 2) return {};
  KnotDiagram d;
  while (!try_diagram(m, first, last, d)) build_frame(m, frames_[m].attempt + 1);
  return d;
}

KnotLabel ClosureEnsemble::classify(std::size_t m, std::size_t first, std::size_t last) {
  return classify_modular(diagram(m, first, last));
}

bool ClosureEnsemble::has_type(std::size_t m, std::size_t first, std::size_t last, const KnotLabel& label) {
  return knotint::has_type(diagram(m, first, last), label);
}

bool ClosureEnsemble::drop_first_is_isotopy(std::size_t m, std::size_t first, std::size_t last) const {
  const Point3& p = frames_[m].point;
  const Point3& a = chain_[first];
  const Point3& b = chain_[first + 1];
  for (std::size_t j = first + 2; j < last; ++j) {
    if (segment_hits_triangle(chain_[j], chain_[j + 1], p, a, b)) return false;
  }
  return true;
}

bool ClosureEnsemble::drop_last_is_isotopy(std::size_t m, std::size_t first, std::size_t last) const {
  const Point3& p = frames_[m].point;
  const Point3& a = chain_[last - 1];
  const Point3& b = chain_[last];
  for (std::size_t j = first; j + 3 <= last; ++j) {
    if (segment_hits_triangle(chain_[j], chain_[j + 1], a, b, p)) return false;
  }
  return true;
}

ClosureSpectrum dominant_type(const OpenChain& chain, std::size_t closures, std::uint64_t seed,
                              const ClosureSettings& settings) {
  if (closures == 0) throw IndexOutOfRange("closure count must be at least 1");
  ClosureEnsemble ensemble(chain.vertices, closures, seed, settings);
  std::vector<KnotLabel> labels;
  labels.reserve(closures);
  for (std::size_t m = 0; m < closures; ++m) labels.push_back(ensemble.classify(m, 0, chain.size() - 1));
  return make_spectrum(labels);
}

ClosureSpectrum projection_spectrum(const PLCurve& curve, std::size_t directions, std::uint64_t seed) {
  if (directions == 0) throw IndexOutOfRange("direction count must be at least 1");
  std::vector<KnotLabel> labels;
  labels.reserve(directions);
  for (std::size_t m = 0; m < directions; ++m) {
    labels.push_back(classify_curve(curve, derive_seed(seed, StreamTag::kDirection, m + 1)));
  }
  return make_spectrum(labels);
}

}  // namespace knotint
