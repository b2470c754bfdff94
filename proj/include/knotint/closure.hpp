#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "knotint/curve.hpp"
#include "knotint/diagram.hpp"
#include "knotint/invariants.hpp"

namespace knotint {

struct ClosureSettings {
  double radius_factor = 10.0;
  // Place an ensemble's closure points on a randomly rotated spherical
  // Fibonacci lattice. Each point is still uniform on the sphere, but the
  // ensemble covers it evenly, which lowers the variance of type frequencies.
  bool stratified = true;
  ProjectionSettings projection;
};

struct ClosureSpectrum {
  std::size_t total = 0;
  std::vector<std::pair<KnotLabel, std::size_t>> counts;  // sorted simplest first
  KnotLabel dominant;

  std::size_t count(const KnotLabel& label) const;
  double frequency(const KnotLabel& label) const;
};

// Builds a spectrum; the dominant label has the largest count with ties going
// to the simpler type.
ClosureSpectrum make_spectrum(std::span<const KnotLabel> labels);

void to_json(nlohmann::json& j, const ClosureSpectrum& s);

struct BoundingSphere {
  Point3 center;
  double radius = 0.0;
};
// Centre of the axis-aligned bounding box and the largest vertex distance to it.
BoundingSphere bounding_sphere(std::span<const Point3> points);

// Joins both chain ends to one point drawn uniformly from a sphere of radius
// radius_factor times the chain's bounding radius.
PLCurve uniform_closure(const OpenChain& chain, std::uint64_t seed, const ClosureSettings& settings = {});

// M closures of one chain, each with its own closure point and projection
// direction. Sub-chains [first, last] (vertex indices, inclusive) are closed
// through the same points, so their closures are comparable across trims.
class ClosureEnsemble {
 public:
  ClosureEnsemble(std::span<const Point3> chain, std::size_t closures, std::uint64_t seed,
                  const ClosureSettings& settings = {});

  std::size_t size() const noexcept { return frames_.size(); }
  std::size_t chain_size() const noexcept { return chain_.size(); }
  const Point3& closure_point(std::size_t m) const { return frames_[m].point; }

  KnotDiagram diagram(std::size_t m, std::size_t first, std::size_t last);
  KnotLabel classify(std::size_t m, std::size_t first, std::size_t last);
  bool has_type(std::size_t m, std::size_t first, std::size_t last, const KnotLabel& label);

  // Removing the first (last) vertex of closed sub-chain [first, last] is an
  // ambient isotopy when no other edge pierces the dropped triangle.
  bool drop_first_is_isotopy(std::size_t m, std::size_t first, std::size_t last) const;
  bool drop_last_is_isotopy(std::size_t m, std::size_t first, std::size_t last) const;

 private:
  struct ChainCrossing {
    std::uint32_t e1;
    std::uint32_t e2;
    double s;
    double t;
    bool first_over;
    int sign;
  };
  struct Frame {
    Point3 point;
    Vec3 direction;
    std::vector<Projected> projected;
    Projected projected_point;
    std::vector<ChainCrossing> crossings;
    std::uint64_t attempt = 0;
  };

  void build_frame(std::size_t m, std::uint64_t attempt);
  bool try_diagram(std::size_t m, std::size_t first, std::size_t last, KnotDiagram& out) const;

  std::vector<Point3> chain_;
  std::vector<Frame> frames_;
  std::uint64_t seed_;
  ClosureSettings settings_;
  BoundingSphere sphere_;
};

// Labels of a closed curve from M independent generic projections.
ClosureSpectrum projection_spectrum(const PLCurve& curve, std::size_t directions, std::uint64_t seed);

ClosureSpectrum dominant_type(const OpenChain& chain, std::size_t closures, std::uint64_t seed,
                              const ClosureSettings& settings = {});

}  // namespace knotint
