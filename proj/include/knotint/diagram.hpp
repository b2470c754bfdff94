#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "knotint/curve.hpp"
#include "knotint/geometry.hpp"

namespace knotint {

struct ProjectionSettings {
  double min_sin_angle = 1e-6;  // transversality of projected edges
  double min_depth = 1e-9;      // separation of the two strands along the view
  double min_param = 1e-10;     // distance of a crossing from an edge endpoint
};

struct Crossing {
  std::size_t over_edge = 0;
  std::size_t under_edge = 0;
  int sign = 0;  // +1 when (over tangent, under tangent, view direction) is right-handed
  double over_param = 0.0;
  double under_param = 0.0;
};

struct GaussEntry {
  int crossing = 0;
  bool over = false;
  int sign = 0;
  friend bool operator==(const GaussEntry&, const GaussEntry&) = default;
};

struct KnotDiagram {
  std::vector<GaussEntry> code;
  bool closed = true;

  std::size_t crossing_count() const noexcept { return code.size() / 2; }
  // Each crossing id appears exactly twice, once over and once under, with a
  // consistent sign.
  bool valid() const;
  int writhe() const noexcept;
  friend bool operator==(const KnotDiagram&, const KnotDiagram&) = default;
};

// Coordinates in the plane orthogonal to the view direction; depth grows
// towards the viewer.
struct Projected {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

class Projector {
 public:
  explicit Projector(const Vec3& direction);
  Projected operator()(const Point3& p) const noexcept {
    return {dot(p, e1_), dot(p, e2_), dot(p, d_)};
  }
  const Vec3& direction() const noexcept { return d_; }

 private:
  Vec3 d_;
  Vec3 e1_;
  Vec3 e2_;
};

enum class PairTest { kNone, kCross, kDegenerate };

struct EdgePairCrossing {
  double s = 0.0;  // along the first edge
  double t = 0.0;  // along the second edge
  bool first_over = false;
  int sign = 0;
};

PairTest test_edge_pair(const Projected& a0, const Projected& a1, const Projected& b0,
                        const Projected& b1, const ProjectionSettings& settings,
                        EdgePairCrossing& out) noexcept;

// All crossings between non-adjacent edges of a projected polygon. Throws
// DegenerateProjection.
std::vector<Crossing> find_crossings(std::span<const Projected> points, bool closed,
                                     const ProjectionSettings& settings = {});

// A crossing placed by curve position (edge index + parameter) of both strands.
struct PlacedCrossing {
  double over_pos = 0.0;
  double under_pos = 0.0;
  int sign = 0;
};

KnotDiagram diagram_from_placed(std::span<const PlacedCrossing> crossings, bool closed);

KnotDiagram project(const PLCurve& curve, const Vec3& direction, const ProjectionSettings& settings = {});
KnotDiagram project(const OpenChain& chain, const Vec3& direction, const ProjectionSettings& settings = {});

// Exhaustive Reidemeister I/II reduction on the Gauss code.
KnotDiagram simplify(const KnotDiagram& diagram);

Vec3 random_direction(std::uint64_t seed);

// Gauss codes serialize as [[id, "O"|"U", sign], ...].
nlohmann::json gauss_code_json(const KnotDiagram& diagram);
KnotDiagram diagram_from_json(const nlohmann::json& j, bool closed = true);

}  // namespace knotint
