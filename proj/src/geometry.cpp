#include "knotint/geometry.hpp"

#include <algorithm>

namespace knotint {

Mat3 axis_angle(const Vec3& k, double angle) noexcept {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double v = 1.0 - c;
  Mat3 r;
  r.m = {c + k.x * k.x * v,       k.x * k.y * v - k.z * s, k.x * k.z * v + k.y * s,
         k.y * k.x * v + k.z * s, c + k.y * k.y * v,       k.y * k.z * v - k.x * s,
         k.z * k.x * v - k.y * s, k.z * k.y * v + k.x * s, c + k.z * k.z * v};
  return r;
}

std::array<Vec3, 2> orthonormal_basis(const Vec3& n) noexcept {
  const Vec3 helper = std::abs(n.x) < 0.6 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = normalized(cross(n, helper));
  return {e1, cross(n, e1)};
}

bool segment_hits_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                           const Vec3& c) noexcept {
  // Signed volumes: the segment endpoints must lie on opposite sides of the
  // triangle's plane, and the segment's line must pass inside all three edges.
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 n = cross(ab, ac);
  const double dp = dot(p - a, n);
  const double dq = dot(q - a, n);
  if ((dp > 0.0 && dq > 0.0) || (dp < 0.0 && dq < 0.0)) return false;
  if (dp == 0.0 && dq == 0.0) return false;  // coplanar: not a transversal piercing

  const Vec3 d = q - p;
  const double s1 = dot(d, cross(a - p, b - p));
  const double s2 = dot(d, cross(b - p, c - p));
  const double s3 = dot(d, cross(c - p, a - p));
  return (s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0) || (s1 <= 0.0 && s2 <= 0.0 && s3 <= 0.0);
}

std::optional<SegmentPair2D> intersect_segments_2d(double ax, double ay, double bx, double by,
                                                   double cx, double cy, double dx,
                                                   double dy) noexcept {
  const double rx = bx - ax, ry = by - ay;
  const double qx = dx - cx, qy = dy - cy;
  const double denom = rx * qy - ry * qx;
  if (denom == 0.0) return std::nullopt;
  const double wx = cx - ax, wy = cy - ay;
  const double s = (wx * qy - wy * qx) / denom;
  const double t = (wx * ry - wy * rx) / denom;
  const double lr = std::hypot(rx, ry);
  const double lq = std::hypot(qx, qy);
  return SegmentPair2D{s, t, denom / (lr * lq)};
}

}  // namespace knotint
