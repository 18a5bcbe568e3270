#pragma once

// Small 2D/3D vector kit plus the polygon predicates used by the plan-view
// line-of-sight code. Coordinates are meters.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace viewq {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;

  constexpr Vec2 xy() const noexcept { return {x, y}; }
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }

constexpr double dot(Vec3 a, Vec3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) noexcept { return std::sqrt(dot(a, a)); }

inline constexpr double kPi = 3.14159265358979323846;
constexpr double deg(double radians) noexcept { return radians * 180.0 / kPi; }
constexpr double rad(double degrees) noexcept { return degrees * kPi / 180.0; }

/// Unsigned angle between two plane vectors, in radians, in [0, pi].
inline double angle_between(Vec2 a, Vec2 b) noexcept {
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

using Polygon = std::vector<Vec2>;

/// Tolerance for "on the boundary" tests, in meters.
inline constexpr double kGeomEps = 1e-9;

inline double signed_area(std::span<const Vec2> poly) noexcept {
  double twice = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) twice += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * twice;
}

inline double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) noexcept {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

enum class Location { Outside, Boundary, Inside };

inline Location locate(Vec2 p, std::span<const Vec2> poly) noexcept {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (distance_to_segment(p, poly[i], poly[(i + 1) % n]) <= kGeomEps) return Location::Boundary;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

/// Parameters t in [0,1] along segment ab at which it meets the polygon boundary.
inline std::vector<double> boundary_hits(Vec2 a, Vec2 b, std::span<const Vec2> poly) {
  std::vector<double> hits;
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return hits;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 c = poly[i];
    const Vec2 e = poly[(i + 1) % n] - c;
    const double denom = cross(d, e);
    const double scale = std::sqrt(len2 * dot(e, e));
    if (std::abs(denom) > 1e-14 * scale) {
      const double t = cross(c - a, e) / denom;
      const double u = cross(c - a, d) / denom;
      if (t >= -1e-12 && t <= 1.0 + 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12)
        hits.push_back(std::clamp(t, 0.0, 1.0));
    } else if (std::abs(cross(c - a, d)) <= kGeomEps * std::sqrt(len2)) {
      // collinear overlap: both edge endpoints bracket the shared stretch
      for (const Vec2 q : {c, c + e}) {
        const double t = dot(q - a, d) / len2;
        if (t > 0.0 && t < 1.0) hits.push_back(t);
      }
    }
  }
  return hits;
}

/// Splits segment ab at every boundary crossing of `poly` and reports the
/// location of each piece (sampled at its midpoint).
template <typename Visitor>
void for_each_piece(Vec2 a, Vec2 b, std::span<const Vec2> poly, Visitor&& visit) {
  std::vector<double> ts = boundary_hits(a, b, poly);
  ts.push_back(0.0);
  ts.push_back(1.0);
  std::sort(ts.begin(), ts.end());
  const double len = norm(b - a);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if ((ts[i + 1] - ts[i]) * len <= 1e-12) continue;
    const double tm = 0.5 * (ts[i] + ts[i + 1]);
    if (!visit(locate(a + tm * (b - a), poly))) return;
  }
}

/// True when some stretch of segment ab runs through the open interior of `poly`.
inline bool crosses_interior(Vec2 a, Vec2 b, std::span<const Vec2> poly) {
  bool hit = false;
  for_each_piece(a, b, poly, [&](Location loc) {
    hit = loc == Location::Inside;
    return !hit;
  });
  return hit;
}

/// True when some stretch of segment ab lies strictly outside `poly`.
inline bool leaves_region(Vec2 a, Vec2 b, std::span<const Vec2> poly) {
  bool out = false;
  for_each_piece(a, b, poly, [&](Location loc) {
    out = loc == Location::Outside;
    return !out;
  });
  return out;
}

inline bool segments_properly_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

/// Simple-polygon check: no two non-adjacent edges touch, no adjacent edges fold back.
inline bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  if (std::abs(signed_area(poly)) <= 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Vec2 c = poly[j], d = poly[(j + 1) % n];
      if (adjacent) {
        const Vec2 shared = (j == i + 1) ? b : a;
        const Vec2 p = (j == i + 1) ? a : b;
        const Vec2 q = (j == i + 1) ? d : c;
        // folded back onto itself
        if (std::abs(cross(p - shared, q - shared)) <= 0.0 && dot(p - shared, q - shared) > 0.0)
          return false;
        continue;
      }
      if (segments_properly_intersect(a, b, c, d)) return false;
      if (distance_to_segment(c, a, b) <= kGeomEps || distance_to_segment(d, a, b) <= kGeomEps ||
          distance_to_segment(a, c, d) <= kGeomEps || distance_to_segment(b, c, d) <= kGeomEps)
        return false;
    }
  }
  return true;
}

}  // namespace viewq
