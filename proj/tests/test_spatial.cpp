#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "viewq/spatial.hpp"

using namespace viewq;
using fixtures::rect;
using fixtures::wall_window;

TEST(LineOfSight, ObstructionInteriorBlocks) {
  const auto w = wall_window({2, 0}, {4, 0});
  const std::vector<Polygon> obs{rect(2.5, 1.0, 3.5, 1.5)};
  EXPECT_FALSE(has_line_of_sight({3, 3}, w, obs));
  EXPECT_TRUE(has_line_of_sight({0.5, 3}, w, obs));
  EXPECT_TRUE(has_line_of_sight({3, 3}, w, std::span<const Polygon>{}));
}

TEST(LineOfSight, GrazingAnEdgeDoesNotBlock) {
  const auto w = wall_window({2, 0}, {4, 0});  // midpoint (3, 0)
  // sight line x = 3 runs along the obstruction's left edge
  const std::vector<Polygon> obs{rect(3.0, 1.0, 4.0, 2.0)};
  EXPECT_TRUE(has_line_of_sight({3, 3}, w, obs));
}

TEST(LineOfSight, ReflexWallBlocks) {
  FloorPlan p = fixtures::plan({{0, 0}, {6, 0}, {6, 3}, {3, 3}, {3, 6}, {0, 6}}, {}, {wall_window({6, 0.8}, {6, 2.2})}, 0.5);
  EXPECT_TRUE(has_line_of_sight({2, 2}, p.windows[0], p));
  EXPECT_FALSE(has_line_of_sight({0.5, 5.5}, p.windows[0], p));
}

TEST(VisibleAngle, UnobstructedEqualsSubtense) {
  const auto p = fixtures::plan(rect(0, 0, 6, 4), {}, {wall_window({1, 0}, {5, 0})}, 0.5);
  const Vec2 q{2.2, 3.1};
  EXPECT_NEAR(visible_horizontal_angle(q, p.windows[0], p), oracle::law_of_cosines_deg(q, {1, 0}, {5, 0}), 1e-9);
}

TEST(VisibleAngle, PostHidesPartOfTheSpan) {
  // a thin post directly between the observer and the window's left half
  const auto p = fixtures::plan(rect(0, 0, 6, 4), {rect(1.9, 1.0, 2.1, 1.2)}, {wall_window({1, 0}, {5, 0})}, 0.5);
  const Vec2 q{3, 3};
  const double full = oracle::law_of_cosines_deg(q, {1, 0}, {5, 0});
  // the post's shadow on the sill line: rays through its widest corners
  auto hit = [&](Vec2 v) { return q.x + (v.x - q.x) * (q.y / (q.y - v.y)); };
  double s0 = 1e9, s1 = -1e9;
  for (const Vec2 v : p.obstructions[0]) s0 = std::min(s0, hit(v)), s1 = std::max(s1, hit(v));
  const double hidden = oracle::law_of_cosines_deg(q, {s0, 0}, {s1, 0});
  EXPECT_NEAR(visible_horizontal_angle(q, p.windows[0], p), full - hidden, 1e-9);
}

TEST(Grid, OrderedByRowThenColumnAndExcludesObstructions) {
  auto p = fixtures::plan(rect(0, 0, 2, 2), {rect(1.0, 1.0, 2.0, 2.0)}, {wall_window({0, 0}, {2, 0})}, 0.5);
  const auto pts = grid_points(p);
  ASSERT_EQ(pts.size(), 12u);
  for (std::size_t i = 1; i < pts.size(); ++i)
    EXPECT_TRUE(pts[i - 1].y < pts[i].y || (pts[i - 1].y == pts[i].y && pts[i - 1].x < pts[i].x));
  for (const Vec2 c : pts) EXPECT_FALSE(c.x > 1.0 && c.y > 1.0);
}

TEST(Grid, OccupiedRegionLimitsCells) {
  auto p = fixtures::plan(rect(0, 0, 4, 4), {}, {wall_window({0, 0}, {4, 0})}, 0.5);
  p.occupied_region = rect(0, 0, 2, 2);
  EXPECT_EQ(grid_points(p).size(), 16u);
}

TEST(Grid, ZeroAreaRejected) {
  auto p = fixtures::plan({{0, 0}, {1, 0}, {2, 0}}, {}, {}, 0.5);
  EXPECT_THROW(grid_points(p), DomainError);
  p = fixtures::plan(rect(0, 0, 4, 4), {}, {}, 0.0);
  EXPECT_THROW(grid_points(p), DomainError);
}

TEST(FloorPlanValidate, ReportsEveryProblem) {
  FloorPlan p = fixtures::plan({{0, 0}, {4, 4}, {4, 0}, {0, 4}}, {rect(5, 5, 6, 6)}, {wall_window({1, 1}, {2, 1})}, 0);
  const auto problems = p.validate();
  EXPECT_GE(problems.size(), 4u);
}

TEST(FloorPlanValidate, AcceptsSyntheticRooms) {
  for (const auto& room : fixtures::synthetic_rooms()) EXPECT_TRUE(room.plan.validate().empty()) << room.name;
}

TEST(Spatial, BisectedRoomIsHalf) {
  const auto a = spatial_assessment(fixtures::bisected_room());
  EXPECT_EQ(a.cells.size(), 96u);
  EXPECT_EQ(a.seeing, 48u);
  EXPECT_DOUBLE_EQ(a.fraction(), 0.5);
}

TEST(Spatial, QualifierMatchesLawOfCosinesInOpenRoom) {
  const auto room = fixtures::synthetic_rooms().front();
  const AccessThresholds q{14.0, 54.0, AngleBasis::Horizontal};
  const auto a = spatial_assessment(room.plan, q);
  const auto& w = room.plan.windows[0];
  std::size_t qualified = 0;
  for (const auto& c : a.cells) {
    const double angle = oracle::law_of_cosines_deg({c.x, c.y}, w.base_start(), w.base_end());
    EXPECT_NEAR(c.best_angle_deg, angle, 1e-9);
    EXPECT_EQ(c.qualified, angle >= 14.0);
    qualified += c.qualified;
  }
  EXPECT_EQ(a.qualified, qualified);
  EXPECT_LT(a.qualified, a.seeing);
}

TEST(Spatial, SmallerBasisUsesVerticalAngleToo) {
  const auto room = fixtures::synthetic_rooms().front();
  const AccessThresholds q{11.0, 90.0, AngleBasis::Smaller};
  const auto a = spatial_assessment(room.plan, q, 1.2);
  for (const auto& c : a.cells) {
    const double v = view_angles(Observer{{c.x, c.y}, 1.2}, room.plan.windows[0]).vertical_deg;
    EXPECT_LE(c.best_angle_deg, v + 1e-12);
  }
}

TEST(Spatial, ThreadCountDoesNotChangeResult) {
  for (const auto& room : fixtures::synthetic_rooms()) {
    const auto one = spatial_assessment(room.plan, AccessThresholds{14.0, 54.0, AngleBasis::Horizontal}, 1.2, 1);
    for (unsigned t : {2u, 3u, 8u}) {
      const auto many = spatial_assessment(room.plan, AccessThresholds{14.0, 54.0, AngleBasis::Horizontal}, 1.2, t);
      ASSERT_EQ(one.cells.size(), many.cells.size());
      for (std::size_t i = 0; i < one.cells.size(); ++i) {
        EXPECT_EQ(one.cells[i].sees_window, many.cells[i].sees_window);
        EXPECT_EQ(one.cells[i].best_angle_deg, many.cells[i].best_angle_deg);
      }
      EXPECT_EQ(one.qualified, many.qualified);
    }
  }
}

TEST(Spatial, RejectsNonPositiveEyeHeight) {
  EXPECT_THROW(spatial_assessment(fixtures::bisected_room(), std::nullopt, 0.0), DomainError);
}

TEST(Spatial, MatchesRayMarchOracleOnEveryRoom) {
  for (const auto& room : fixtures::synthetic_rooms()) {
    SCOPED_TRACE(room.name);
    const auto a = spatial_assessment(room.plan);
    const auto ref = oracle::classify_grid(room.plan, room.plan.grid_spacing_m, 5e-4);
    ASSERT_EQ(a.cells.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      EXPECT_NEAR(a.cells[i].x, ref[i].center.x, 1e-9);
      EXPECT_NEAR(a.cells[i].y, ref[i].center.y, 1e-9);
      EXPECT_EQ(a.cells[i].sees_window, ref[i].sees) << a.cells[i].x << "," << a.cells[i].y;
    }
  }
}

TEST(MultiDirection, PerpendicularWindows) {
  const auto p = fixtures::plan(rect(0, 0, 6, 6), {}, {wall_window({1, 0}, {3, 0}), wall_window({6, 1}, {6, 3})}, 0.5);
  EXPECT_TRUE(multi_direction_access({5.0, 1.0}, p));   // south-west and north-east
  EXPECT_FALSE(multi_direction_access({1.0, 5.5}, p));  // both windows off to the south-east
}

TEST(MultiDirection, SingleWindowNever) {
  EXPECT_EQ(multi_direction_fraction(fixtures::bisected_room()), 0.0);
}

// Property: the sorted-bearing shortcut agrees with exhaustive pairs on random points.
TEST(MultiDirectionProperty, MatchesPairwise) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto p = fixtures::plan(rect(0, 0, 8, 8), {},
                                {wall_window({1, 0}, {3, 0}), wall_window({8, 5}, {8, 7}), wall_window({6, 8}, {4, 8}),
                                 wall_window({0, 7}, {0, 6})},
                                0.5);
  for (int i = 0; i < 3000; ++i) {
    const Vec2 q{0.01 + 7.98 * unit(rng), 0.01 + 7.98 * unit(rng)};
    ASSERT_EQ(multi_direction_access(q, p), oracle::pairwise_multi_direction(q, p, 1e-3)) << q.x << "," << q.y;
  }
}
