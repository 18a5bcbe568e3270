#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viewq/content.hpp"
#include "viewq/errors.hpp"
#include "viewq/geometry.hpp"
#include "viewq/knee.hpp"

namespace viewq {

/// A rectangular opening in a vertical wall.
///
/// `origin` is the foot of the left jamb at floor level; the glazing spans
/// `origin + s*u + t*v` for s in [0, width] and t in [sill_height, head_height].
/// `u` is horizontal along the wall, `v` is straight up and `normal` points out
/// of the room.
struct WindowRect {
  Vec3 origin;
  Vec3 u{1.0, 0.0, 0.0};
  Vec3 v{0.0, 0.0, 1.0};
  Vec3 normal{0.0, -1.0, 0.0};
  double width = 1.0;
  double sill_height = 0.0;
  double head_height = 1.0;

  Vec2 base_start() const noexcept { return origin.xy(); }
  Vec2 base_end() const noexcept { return origin.xy() + width * u.xy(); }
  Vec2 base_mid() const noexcept { return origin.xy() + (0.5 * width) * u.xy(); }
  double height() const noexcept { return head_height - sill_height; }

  Vec3 center() const noexcept {
    return origin + (0.5 * width) * u + (0.5 * (sill_height + head_height)) * v;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    constexpr double tol = 1e-9;
    if (!(width > 0.0)) problems.emplace_back("window width must be > 0");
    if (!(sill_height >= 0.0)) problems.emplace_back("window sill_height must be >= 0");
    if (!(head_height > sill_height)) problems.emplace_back("window head_height must exceed sill_height");
    if (std::abs(norm(u) - 1.0) > tol || std::abs(norm(v) - 1.0) > tol ||
        std::abs(norm(normal) - 1.0) > tol)
      problems.emplace_back("window axes u, v, normal must be unit vectors");
    if (std::abs(dot(u, v)) > tol || std::abs(dot(u, normal)) > tol || std::abs(dot(v, normal)) > tol)
      problems.emplace_back("window axes u, v, normal must be mutually orthogonal");
    if (std::abs(v.z - 1.0) > tol) problems.emplace_back("window v axis must point straight up");
    return problems;
  }
};

inline constexpr double kSeatedEyeHeight = 1.2;

struct Observer {
  Vec2 position;
  double eye_height = kSeatedEyeHeight;
};

struct ViewAngles {
  double horizontal_deg = 0.0;
  double vertical_deg = 0.0;
  double smaller_deg = 0.0;
  double solid_angle_sr = 0.0;
};

namespace detail {

// Solid angle of triangle (a, b, c) seen from the origin.
inline double triangle_solid_angle(Vec3 a, Vec3 b, Vec3 c) noexcept {
  const double la = norm(a), lb = norm(b), lc = norm(c);
  const double num = std::abs(dot(a, cross(b, c)));
  const double den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
  return 2.0 * std::atan2(num, den);
}

}  // namespace detail

/// Signed distance of a 3D point from the window plane; negative is indoors.
inline double plane_offset(const WindowRect& window, Vec3 point) noexcept {
  return dot(point - window.origin, window.normal);
}

/// Angles subtended at the observer's eye by the window.
///
/// Horizontal: between the two jambs projected onto the floor plane.
/// Vertical: between sill and head in the vertical plane through the eye and
/// the window center.
inline ViewAngles view_angles(const Observer& observer, const WindowRect& window) {
  if (!(observer.eye_height > 0.0)) throw DomainError("observer eye_height must be > 0");
  if (auto problems = window.validate(); !problems.empty()) throw DomainError(problems.front());

  const Vec3 eye{observer.position.x, observer.position.y, observer.eye_height};
  const double offset = plane_offset(window, eye);
  if (std::abs(offset) <= 1e-12) throw DegenerateGeometryError("observer lies in the window plane");
  if (offset > 0.0) throw DomainError("observer is outside the window plane");

  ViewAngles angles;
  const Vec2 e = observer.position;
  angles.horizontal_deg = deg(angle_between(window.base_start() - e, window.base_end() - e));

  const double reach = norm(window.base_mid() - e);
  const double sill_z = window.origin.z + window.sill_height - eye.z;
  const double head_z = window.origin.z + window.head_height - eye.z;
  angles.vertical_deg = deg(std::atan2(head_z, reach) - std::atan2(sill_z, reach));
  angles.smaller_deg = std::min(angles.horizontal_deg, angles.vertical_deg);

  const Vec3 p0 = window.origin + window.sill_height * window.v - eye;
  const Vec3 p1 = p0 + window.width * window.u;
  const Vec3 p2 = p1 + window.height() * window.v;
  const Vec3 p3 = p0 + window.height() * window.v;
  angles.solid_angle_sr = detail::triangle_solid_angle(p0, p1, p2) + detail::triangle_solid_angle(p0, p2, p3);
  return angles;
}

enum class AngleBasis { Horizontal, Vertical, Smaller };

inline double select_angle(const ViewAngles& a, AngleBasis basis) noexcept {
  switch (basis) {
    case AngleBasis::Horizontal: return a.horizontal_deg;
    case AngleBasis::Vertical: return a.vertical_deg;
    case AngleBasis::Smaller: return a.smaller_deg;
  }
  return a.smaller_deg;
}

inline std::string_view to_string(AngleBasis b) noexcept {
  switch (b) {
    case AngleBasis::Horizontal: return "horizontal";
    case AngleBasis::Vertical: return "vertical";
    case AngleBasis::Smaller: return "smaller";
  }
  return "smaller";
}

/// View content categories that carry published minimum view angles.
enum class ContentClass { SkyOrGroundOnly, LandscapeNoNature, LandscapeWithNature, LandscapeWithSkyOrGround };

inline std::string_view to_string(ContentClass c) noexcept {
  switch (c) {
    case ContentClass::SkyOrGroundOnly: return "sky_or_ground_only";
    case ContentClass::LandscapeNoNature: return "landscape_no_nature";
    case ContentClass::LandscapeWithNature: return "landscape_with_nature";
    case ContentClass::LandscapeWithSkyOrGround: return "landscape_with_sky_or_ground";
  }
  return "landscape_no_nature";
}

/// Picks the threshold row for a scene. Nature takes precedence over the
/// sky/ground row when a landscape view has both.
inline ContentClass classify_content(const SceneDescription& scene) noexcept {
  if (!scene.layers.landscape) return ContentClass::SkyOrGroundOnly;
  if (scene.nature_fraction > 0.0) return ContentClass::LandscapeWithNature;
  if (scene.layers.sky || scene.layers.ground) return ContentClass::LandscapeWithSkyOrGround;
  return ContentClass::LandscapeNoNature;
}

struct AccessThresholds {
  double alpha_min_deg = 0.0;
  std::optional<double> alpha_saturation_deg;
  AngleBasis basis = AngleBasis::Smaller;

  bool saturation_missing() const noexcept { return !alpha_saturation_deg.has_value(); }

  AccessThresholds with_saturation(double saturation_deg) const {
    AccessThresholds copy = *this;
    copy.alpha_saturation_deg = saturation_deg;
    return copy;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (!(alpha_min_deg > 0.0)) problems.emplace_back("alpha_min_deg must be > 0");
    if (alpha_saturation_deg &&
        !(alpha_min_deg < *alpha_saturation_deg && *alpha_saturation_deg <= 180.0))
      problems.emplace_back("alpha_saturation_deg must lie in (alpha_min_deg, 180]");
    return problems;
  }
};

inline AccessThresholds thresholds_for_content(ContentClass content) noexcept {
  switch (content) {
    case ContentClass::SkyOrGroundOnly: return {30.0, std::nullopt, AngleBasis::Vertical};
    case ContentClass::LandscapeNoNature: return {11.0, 90.0, AngleBasis::Smaller};
    case ContentClass::LandscapeWithNature: return {9.0, 50.0, AngleBasis::Smaller};
    case ContentClass::LandscapeWithSkyOrGround: return {14.0, 54.0, AngleBasis::Horizontal};
  }
  return {11.0, 90.0, AngleBasis::Smaller};
}

inline double v_access(double alpha_view_deg, const AccessThresholds& thresholds) {
  if (thresholds.saturation_missing())
    throw ConfigurationRequiredError(
        "no published saturation angle for this view content; configure alpha_saturation_deg");
  if (std::isnan(alpha_view_deg) || alpha_view_deg < 0.0) throw DomainError("view angle must be >= 0");
  return knee_score(alpha_view_deg, thresholds.alpha_min_deg, *thresholds.alpha_saturation_deg);
}

/// Ordinal 1..5 rating from the smaller view angle, bumped one step for
/// nature views inside the transitional bands.
inline int view_factor(double smaller_angle_deg, bool nature_view) {
  if (std::isnan(smaller_angle_deg) || smaller_angle_deg <= 0.0 || smaller_angle_deg > 90.0)
    throw DomainError("view_factor: angle must lie in (0, 90]");
  const int bump = nature_view ? 1 : 0;
  const double a = smaller_angle_deg;
  if (a < 4.0) return 1;
  if (a < 9.0) return 1 + bump;
  if (a < 11.0) return 2 + bump;
  if (a < 15.0) return 3;
  if (a < 20.0) return 3 + bump;
  if (a < 40.0) return 4;
  if (a < 50.0) return 4 + bump;
  return 5;
}

}  // namespace viewq
