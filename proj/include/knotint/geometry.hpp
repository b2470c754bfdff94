#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace knotint {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) noexcept {
    x *= s; y *= s; z *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

using Point3 = Vec3;

constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }

constexpr double dot(const Vec3& a, const Vec3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) noexcept { return norm(a - b); }
inline Vec3 normalized(const Vec3& a) noexcept { return a * (1.0 / norm(a)); }
inline bool is_finite(const Vec3& a) noexcept {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Row-major 3x3 rotation.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 operator*(const Vec3& v) const noexcept {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
};

// Rodrigues rotation about a unit axis.
Mat3 axis_angle(const Vec3& unit_axis, double angle) noexcept;

// Orthonormal pair spanning the plane orthogonal to a unit vector.
std::array<Vec3, 2> orthonormal_basis(const Vec3& unit_normal) noexcept;

// Does the closed segment [p, q] meet the triangle (a, b, c)? Contacts at
// shared vertices are the caller's business; this is the plain geometric test.
bool segment_hits_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                           const Vec3& c) noexcept;

struct SegmentPair2D {
  double s;  // parameter along the first segment
  double t;  // parameter along the second segment
  double sin_angle;
};

// Line parameters of two planar segments' supporting lines at their meeting
// point; nullopt only when parallel. Range checks are left to the caller.
std::optional<SegmentPair2D> intersect_segments_2d(double ax, double ay, double bx, double by,
                                                   double cx, double cy, double dx,
                                                   double dy) noexcept;

}  // namespace knotint
