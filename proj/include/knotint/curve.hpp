#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "knotint/geometry.hpp"

namespace knotint {

struct CurveTolerances {
  double min_vertex_separation = 1e-9;
  double equilateral_relative = 1e-6;
  double isometry_relative = 1e-9;
};

// Ordered vertices of a polygonal curve. For closed curves the last vertex is
// joined back to the first, so N vertices means N edges.
class PLCurve {
 public:
  PLCurve() = default;
  // Throws DegenerateCurve on too few vertices, non-finite coordinates or
  // coincident consecutive vertices.
  explicit PLCurve(std::vector<Point3> vertices, bool closed = true,
                   const CurveTolerances& tol = {});

  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return closed_ ? size() : size() - 1; }
  bool closed() const noexcept { return closed_; }
  std::span<const Point3> vertices() const noexcept { return vertices_; }
  const Point3& operator[](std::size_t i) const { return vertices_[i]; }
  // Wrapped access for closed curves.
  const Point3& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  double edge_length(std::size_t i) const;

  friend bool operator==(const PLCurve&, const PLCurve&) = default;

 private:
  std::vector<Point3> vertices_;
  bool closed_ = true;
};

// A closed curve with one edge removed. Both endpoints of the removed edge are
// kept, so the chain has N vertices and N-1 edges.
struct OpenChain {
  std::vector<Point3> vertices;
  std::size_t origin_edge = 0;

  std::size_t size() const noexcept { return vertices.size(); }
  // Vertex k of the chain is this vertex of the parent closed curve.
  std::size_t parent_vertex(std::size_t k, std::size_t parent_size) const noexcept {
    return (origin_edge + 1 + k) % parent_size;
  }
};

PLCurve load_xyz(const std::filesystem::path& path);
PLCurve parse_xyz(const std::string& text);
std::string format_xyz(const PLCurve& curve);
void save_xyz(const PLCurve& curve, const std::filesystem::path& path);

OpenChain open_at_edge(const PLCurve& curve, std::size_t edge);
// Closes the chain back along its removed edge.
PLCurve reclose(const OpenChain& chain);

bool is_equilateral(const PLCurve& curve, double relative_tol = CurveTolerances{}.equilateral_relative);

PLCurve apply_rigid_motion(const PLCurve& curve, const Mat3& rotation, const Vec3& translation);
// Uniform random rotation (Haar) plus a translation with coordinates in [-10, 10).
PLCurve random_rigid_motion(const PLCurve& curve, std::uint64_t seed);
PLCurve mirror(const PLCurve& curve);
PLCurve scaled(const PLCurve& curve, double factor);
// Relabel so that new vertex k is old vertex k + shift.
PLCurve cyclic_shift(const PLCurve& curve, std::size_t shift);

// Stable key derived from the bit patterns of an edge's endpoints. Used to seed
// per-opening randomness by geometry rather than by label.
std::uint64_t edge_key(const PLCurve& curve, std::size_t edge) noexcept;

void to_json(nlohmann::json& j, const PLCurve& curve);
void from_json(const nlohmann::json& j, PLCurve& curve);

// Fixtures shared by tests, the CLI and the experiments.
PLCurve regular_polygon(std::size_t n, double edge = 1.0);
// (2,3) torus knot (2 + cos 3t)(cos 2t, sin 2t) + sin 3t e_z sampled at n points.
PLCurve torus_trefoil(std::size_t n);

}  // namespace knotint
