#pragma once

// Plan-view access analysis: line of sight to windows across a floor grid,
// the visible share of each window's span, and two-direction access.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "viewq/access.hpp"
#include "viewq/errors.hpp"
#include "viewq/geometry.hpp"

namespace viewq {

struct FloorPlan {
  Polygon boundary;
  std::vector<Polygon> obstructions;
  std::vector<WindowRect> windows;
  double grid_spacing_m = 0.5;
  std::optional<Polygon> occupied_region;

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (!is_simple(boundary)) problems.emplace_back("floor boundary must be a simple polygon");
    if (!(grid_spacing_m > 0.0)) problems.emplace_back("grid_spacing_m must be > 0");
    for (std::size_t i = 0; i < obstructions.size(); ++i) {
      const auto& ob = obstructions[i];
      if (ob.size() < 3 || signed_area(ob) == 0.0) {
        problems.push_back("obstruction " + std::to_string(i) + " must have non-zero area");
        continue;
      }
      for (const Vec2 p : ob)
        if (locate(p, boundary) == Location::Outside) {
          problems.push_back("obstruction " + std::to_string(i) + " extends outside the floor boundary");
          break;
        }
    }
    for (std::size_t i = 0; i < windows.size(); ++i) {
      for (auto& p : windows[i].validate()) problems.push_back("window " + std::to_string(i) + ": " + p);
      if (locate(windows[i].base_start(), boundary) != Location::Boundary ||
          locate(windows[i].base_end(), boundary) != Location::Boundary)
        problems.push_back("window " + std::to_string(i) + " must lie on the floor boundary");
    }
    if (occupied_region && !is_simple(*occupied_region))
      problems.emplace_back("occupied region must be a simple polygon");
    return problems;
  }
};

/// Line of sight from `point` to the window midpoint, blocked only by the
/// interiors of the given obstruction polygons.
inline bool has_line_of_sight(Vec2 point, const WindowRect& window, std::span<const Polygon> obstructions) {
  const Vec2 target = window.base_mid();
  return std::none_of(obstructions.begin(), obstructions.end(),
                      [&](const Polygon& ob) { return crosses_interior(point, target, ob); });
}

/// Same, but the room walls also block: the sight line may not leave the boundary.
inline bool has_line_of_sight(Vec2 point, const WindowRect& window, const FloorPlan& plan) {
  if (leaves_region(point, window.base_mid(), plan.boundary)) return false;
  return has_line_of_sight(point, window, plan.obstructions);
}

namespace detail {

inline bool clear_segment(Vec2 a, Vec2 b, const FloorPlan& plan) {
  if (leaves_region(a, b, plan.boundary)) return false;
  return std::none_of(plan.obstructions.begin(), plan.obstructions.end(),
                      [&](const Polygon& ob) { return crosses_interior(a, b, ob); });
}

// Window parameters in (0,1) where the view from `point` can change: rays
// through polygon vertices and edges crossing the window sill line.
inline void add_critical_params(Vec2 point, Vec2 s0, Vec2 s1, std::span<const Vec2> poly,
                                std::vector<double>& out) {
  const Vec2 span = s1 - s0;
  for (const Vec2 vtx : poly) {
    const Vec2 dir = vtx - point;
    const double denom = cross(dir, span);
    if (std::abs(denom) < 1e-15) continue;
    const double t = cross(s0 - point, span) / denom;
    const double s = cross(s0 - point, dir) / denom;
    if (t > 0.0 && s > 0.0 && s < 1.0) out.push_back(s);
  }
  for (double s : boundary_hits(s0, s1, poly))
    if (s > 0.0 && s < 1.0) out.push_back(s);
}

}  // namespace detail

/// Horizontal angle (degrees) of the window span that is actually visible
/// from `point` in plan, accounting for walls and obstructions.
inline double visible_horizontal_angle(Vec2 point, const WindowRect& window, const FloorPlan& plan) {
  const Vec2 s0 = window.base_start();
  const Vec2 s1 = window.base_end();
  std::vector<double> params{0.0, 1.0};
  detail::add_critical_params(point, s0, s1, plan.boundary, params);
  for (const auto& ob : plan.obstructions) detail::add_critical_params(point, s0, s1, ob, params);
  std::sort(params.begin(), params.end());

  double visible = 0.0;
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    const double a = params[i], b = params[i + 1];
    if (b - a <= 1e-12) continue;
    const Vec2 mid = s0 + (0.5 * (a + b)) * (s1 - s0);
    if (!detail::clear_segment(point, mid, plan)) continue;
    visible += angle_between(s0 + a * (s1 - s0) - point, s0 + b * (s1 - s0) - point);
  }
  return deg(visible);
}

struct GridCell {
  double x = 0.0;
  double y = 0.0;
  bool sees_window = false;
  double best_angle_deg = 0.0;
  bool qualified = false;
};

struct SpatialAssessment {
  std::vector<GridCell> cells;  // sorted by (y, x)
  std::size_t seeing = 0;
  std::size_t qualified = 0;
  double grid_spacing_m = 0.0;
  std::optional<AccessThresholds> qualifier;

  double fraction() const noexcept {
    return cells.empty() ? 0.0 : double(qualified) / double(cells.size());
  }
};

/// Occupiable sample points: square cell centers inside the boundary (and
/// the occupied region if given) that are not inside an obstruction.
inline std::vector<Vec2> grid_points(const FloorPlan& plan) {
  const Polygon& region = plan.occupied_region ? *plan.occupied_region : plan.boundary;
  if (region.size() < 3 || std::abs(signed_area(region)) <= 0.0)
    throw DomainError("occupied region has zero area");
  if (!(plan.grid_spacing_m > 0.0)) throw DomainError("grid_spacing_m must be > 0");

  double minx = region[0].x, maxx = region[0].x, miny = region[0].y, maxy = region[0].y;
  for (const Vec2 p : region) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double h = plan.grid_spacing_m;
  const auto nx = static_cast<std::size_t>(std::ceil((maxx - minx) / h - 1e-9));
  const auto ny = static_cast<std::size_t>(std::ceil((maxy - miny) / h - 1e-9));

  std::vector<Vec2> points;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Vec2 c{minx + (double(i) + 0.5) * h, miny + (double(j) + 0.5) * h};
      if (locate(c, region) != Location::Inside) continue;
      if (plan.occupied_region && locate(c, plan.boundary) != Location::Inside) continue;
      const bool blocked = std::any_of(plan.obstructions.begin(), plan.obstructions.end(),
                                       [&](const Polygon& ob) { return locate(c, ob) != Location::Outside; });
      if (!blocked) points.push_back(c);
    }
  }
  if (points.empty()) throw DomainError("occupied region has zero area at this grid spacing");
  return points;
}

/// Best qualifying view angle from `point` over all windows it can see, or
/// nullopt when no window midpoint is in sight.
inline std::optional<double> best_window_angle(Vec2 point, const FloorPlan& plan, AngleBasis basis,
                                               double eye_height) {
  std::optional<double> best;
  for (const auto& window : plan.windows) {
    const Vec3 eye{point.x, point.y, eye_height};
    if (plane_offset(window, eye) >= -1e-12) continue;
    if (!has_line_of_sight(point, window, plan)) continue;
    const double horizontal = visible_horizontal_angle(point, window, plan);
    double angle = horizontal;
    if (basis != AngleBasis::Horizontal) {
      const double vertical = view_angles(Observer{point, eye_height}, window).vertical_deg;
      angle = basis == AngleBasis::Vertical ? vertical : std::min(horizontal, vertical);
    }
    best = best ? std::max(*best, angle) : angle;
  }
  return best;
}

/// Share of floor cells with a direct line of sight to at least one window.
/// With a qualifier the best visible window must also reach alpha_min on the
/// qualifier's angle basis. Cells are split across `threads` workers; the
/// result does not depend on the thread count.
inline SpatialAssessment spatial_assessment(const FloorPlan& plan,
                                            const std::optional<AccessThresholds>& qualifier = std::nullopt,
                                            double eye_height = kSeatedEyeHeight, unsigned threads = 1) {
  if (!(eye_height > 0.0)) throw DomainError("eye_height must be > 0");
  const std::vector<Vec2> points = grid_points(plan);
  SpatialAssessment result;
  result.grid_spacing_m = plan.grid_spacing_m;
  result.qualifier = qualifier;
  result.cells.resize(points.size());
  const AngleBasis basis = qualifier ? qualifier->basis : AngleBasis::Horizontal;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      GridCell& cell = result.cells[k];
      cell.x = points[k].x;
      cell.y = points[k].y;
      const auto best = best_window_angle(points[k], plan, basis, eye_height);
      cell.sees_window = best.has_value();
      cell.best_angle_deg = best.value_or(0.0);
      cell.qualified = cell.sees_window && (!qualifier || cell.best_angle_deg >= qualifier->alpha_min_deg);
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));
  if (threads == 1) {
    work(0, points.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < points.size(); begin += chunk)
      pool.emplace_back(work, begin, std::min(points.size(), begin + chunk));
  }

  for (const auto& cell : result.cells) {
    result.seeing += cell.sees_window ? 1 : 0;
    result.qualified += cell.qualified ? 1 : 0;
  }
  return result;
}

/// Two windows in sight whose bearings from `point` differ by at least 90 degrees.
inline bool multi_direction_access(Vec2 point, const FloorPlan& plan) {
  std::vector<double> bearings;
  for (const auto& window : plan.windows) {
    if (!has_line_of_sight(point, window, plan)) continue;
    const Vec2 d = window.base_mid() - point;
    bearings.push_back(deg(std::atan2(d.y, d.x)));
  }
  if (bearings.size() < 2) return false;
  std::sort(bearings.begin(), bearings.end());
  // The bearings fit in an arc of 360 minus the widest empty gap; some pair is
  // at least 90 apart exactly when that arc is at least 90.
  double widest_gap = bearings.front() + 360.0 - bearings.back();
  for (std::size_t i = 0; i + 1 < bearings.size(); ++i)
    widest_gap = std::max(widest_gap, bearings[i + 1] - bearings[i]);
  return 360.0 - widest_gap >= 90.0 - 1e-9;
}

/// Share of grid cells with two-direction access.
inline double multi_direction_fraction(const FloorPlan& plan) {
  const auto points = grid_points(plan);
  const auto hits = std::count_if(points.begin(), points.end(),
                                  [&](Vec2 p) { return multi_direction_access(p, plan); });
  return double(hits) / double(points.size());
}

}  // namespace viewq
