#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "viewq/viewq.hpp"

namespace viewq::fixtures {

struct WorkedScene {
  SceneDescription scene;
  double expected = 0.0;
  QualityLabel label = QualityLabel::Insufficient;
};

inline SceneDescription scene(bool sky, bool landscape, bool ground, double distance, Movement m, double nature,
                              bool natural = false) {
  SceneDescription s;
  s.layers = {sky, landscape, ground};
  s.content_distance_m = distance;
  s.movement = m;
  s.nature_fraction = nature;
  s.landscape_is_predominantly_natural = natural;
  return s;
}

// Eight published worked examples. Nature bands are represented by a value
// inside the band: "> 50 %" -> 0.6, "25 - 50 %" -> 0.4, "<= 25 %" -> 0.2.
inline std::vector<WorkedScene> worked_scenes() {
  using M = Movement;
  using Q = QualityLabel;
  return {
      {scene(false, true, false, 2, M::None, 0.0), 0.0, Q::Insufficient},
      {scene(true, true, true, 14, M::NearbyOnly, 0.2), 0.5, Q::Good},
      {scene(false, true, false, 2, M::None, 0.6, true), 0.5, Q::Good},
      {scene(false, true, true, 31, M::DistantOnly, 0.6), 0.6875, Q::Good},
      {scene(false, true, true, 54, M::DistantOnly, 0.6), 0.75, Q::Excellent},
      {scene(true, true, true, 63, M::None, 0.4), 0.8125, Q::Excellent},
      {scene(true, true, true, 65, M::None, 0.6), 0.875, Q::Excellent},
      {scene(true, true, true, 851, M::None, 0.6), 0.875, Q::Excellent},
  };
}

/// Window along a counter-clockwise boundary edge from `a` to `b`; the
/// outward normal is the edge direction turned clockwise.
inline WindowRect wall_window(Vec2 a, Vec2 b, double sill = 0.8, double head = 2.2) {
  const Vec2 d = b - a;
  const double len = std::hypot(d.x, d.y);
  WindowRect w;
  w.origin = {a.x, a.y, 0.0};
  w.u = {d.x / len, d.y / len, 0.0};
  w.normal = {d.y / len, -d.x / len, 0.0};
  w.width = len;
  w.sill_height = sill;
  w.head_height = head;
  return w;
}

inline Polygon rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }

struct Room {
  std::string name;
  FloorPlan plan;
};

inline FloorPlan plan(Polygon boundary, std::vector<Polygon> obstructions, std::vector<WindowRect> windows,
                      double spacing) {
  FloorPlan p;
  p.boundary = std::move(boundary);
  p.obstructions = std::move(obstructions);
  p.windows = std::move(windows);
  p.grid_spacing_m = spacing;
  return p;
}

/// The bisected room: a full-width partition halfway between the window wall
/// and the back wall.
inline FloorPlan bisected_room(double spacing = 0.5) {
  return plan(rect(0, 0, 6, 4), {rect(0, 1.95, 6, 2.05)}, {wall_window({0, 0}, {6, 0})}, spacing);
}

inline std::vector<Room> synthetic_rooms() {
  std::vector<Room> rooms;
  rooms.push_back({"open", plan(rect(0, 0, 6, 4), {}, {wall_window({1, 0}, {5, 0})}, 0.3)});
  rooms.push_back({"bisected", bisected_room()});
  rooms.push_back({"partial_partition",
                   plan(rect(0, 0, 6, 4), {rect(2.2, 1.93, 6, 2.07)}, {wall_window({1, 0}, {3, 0})}, 0.3)});
  rooms.push_back({"l_shape",
                   plan({{0, 0}, {6, 0}, {6, 3}, {3, 3}, {3, 6}, {0, 6}}, {}, {wall_window({6, 0.8}, {6, 2.2})}, 0.3)});
  rooms.push_back({"column", plan(rect(0, 0, 6, 4), {rect(2.63, 1.37, 3.41, 2.19)}, {wall_window({0.5, 0}, {5.5, 0})},
                                  0.3)});
  rooms.push_back({"two_windows_desk",
                   plan(rect(0, 0, 7, 5), {rect(3.37, 2.43, 4.61, 3.07)},
                        {wall_window({1, 0}, {3, 0}), wall_window({7, 1.5}, {7, 3.5})}, 0.3)});
  rooms.push_back({"furniture",
                   plan(rect(0, 0, 8, 6),
                        {rect(1.13, 4.07, 2.71, 4.69), rect(5.21, 3.83, 6.37, 4.41), rect(3.47, 1.12, 4.03, 2.96)},
                        {wall_window({6, 6}, {2, 6})}, 0.3)});
  rooms.push_back({"corridor", plan(rect(0, 0, 2, 10), {rect(0, 3.11, 0.83, 3.67), rect(1.21, 6.13, 2, 6.91)},
                                    {wall_window({0.4, 0}, {1.6, 0})}, 0.3)});
  rooms.push_back({"u_shape",
                   plan({{0, 0}, {8, 0}, {8, 6}, {5, 6}, {5, 3.3}, {3, 3.3}, {3, 6}, {0, 6}}, {},
                        {wall_window({2, 0}, {6, 0}), wall_window({2.5, 6}, {0.5, 6}), wall_window({7.5, 6}, {5.5, 6})},
                        0.3)});
  rooms.push_back({"diagonal",
                   plan(rect(0, 0, 7, 5), {{{3.1, 1.6}, {4.3, 2.7}, {3.9, 3.14}, {2.7, 2.04}}},
                        {wall_window({0, 4}, {0, 1}), wall_window({2, 0}, {5, 0})}, 0.3)});
  return rooms;
}

}  // namespace viewq::fixtures
