#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "viewq/access.hpp"

using namespace viewq;

namespace {

// 2 m wide window in the y=0 wall, sill 1.0, head 2.0 (centered on a 1.5 m eye).
WindowRect south_window() {
  WindowRect w;
  w.origin = {-1.0, 0.0, 0.0};
  w.width = 2.0;
  w.sill_height = 1.0;
  w.head_height = 2.0;
  return w;
}

}  // namespace

TEST(ViewAngles, CenteredObserverClosedForm) {
  const auto w = south_window();
  const Observer obs{{0.0, 3.0}, 1.5};
  const auto a = view_angles(obs, w);
  const double expect_h = 2 * std::atan(1.0 / 3.0) * 180 / std::numbers::pi;
  const double expect_v = 2 * std::atan(0.5 / 3.0) * 180 / std::numbers::pi;
  EXPECT_NEAR(a.horizontal_deg, expect_h, 1e-12);
  EXPECT_NEAR(a.vertical_deg, expect_v, 1e-12);
  EXPECT_EQ(a.smaller_deg, std::min(a.horizontal_deg, a.vertical_deg));
  // on-axis rectangle: 4 asin(sin(alpha) sin(beta)) with alpha, beta the half angles
  const double expect_sr = 4 * std::asin(std::sin(std::atan(1.0 / 3.0)) * std::sin(std::atan(0.5 / 3.0)));
  EXPECT_NEAR(a.solid_angle_sr, expect_sr, 1e-12);
}

TEST(ViewAngles, LawOfCosinesOffAxis) {
  const auto w = south_window();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Vec2 p{-6 + 12 * unit(rng), 0.2 + 8 * unit(rng)};
    const auto a = view_angles(Observer{p, 1.2}, w);
    EXPECT_NEAR(a.horizontal_deg, oracle::law_of_cosines_deg(p, {-1, 0}, {1, 0}), 1e-9);
  }
}

TEST(ViewAngles, EyeAboveHeadGivesPositiveVerticalAngle) {
  const auto w = south_window();
  const auto a = view_angles(Observer{{0.0, 2.0}, 2.5}, w);
  const double expect = (std::atan2(0.5, 2.0) - std::atan2(1.5, 2.0)) * -180 / std::numbers::pi;
  EXPECT_NEAR(a.vertical_deg, expect, 1e-12);
  EXPECT_GT(a.vertical_deg, 0.0);
}

TEST(ViewAngles, InPlaneObserverIsDegenerate) {
  EXPECT_THROW(view_angles(Observer{{5.0, 0.0}, 1.2}, south_window()), DegenerateGeometryError);
}

TEST(ViewAngles, ExteriorObserverRejected) {
  EXPECT_THROW(view_angles(Observer{{0.0, -2.0}, 1.2}, south_window()), DomainError);
}

TEST(ViewAngles, InvalidWindowRejected) {
  auto w = south_window();
  w.head_height = w.sill_height;
  EXPECT_THROW(view_angles(Observer{{0, 2}, 1.2}, w), DomainError);
  w = south_window();
  w.v = {0.0, 0.0, -1.0};
  EXPECT_FALSE(w.validate().empty());
  EXPECT_THROW(view_angles(Observer{{0, 2}, 0.0}, south_window()), DomainError);
}

// Property: angles shrink as the observer backs away along the axis.
TEST(ViewAnglesProperty, MonotoneInDistance) {
  const auto w = south_window();
  double prev_h = 1e9, prev_v = 1e9, prev_sr = 1e9;
  for (double d = 0.3; d < 30; d *= 1.1) {
    const auto a = view_angles(Observer{{0.0, d}, 1.5}, w);
    EXPECT_LT(a.horizontal_deg, prev_h);
    EXPECT_LT(a.vertical_deg, prev_v);
    EXPECT_LT(a.solid_angle_sr, prev_sr);
    prev_h = a.horizontal_deg, prev_v = a.vertical_deg, prev_sr = a.solid_angle_sr;
  }
}

TEST(ViewAngles, MonteCarloSpotCheck) {
  const auto w = south_window();
  const Observer obs{{1.7, 2.4}, 1.2};
  const auto a = view_angles(obs, w);
  const auto mc = oracle::monte_carlo_subtense(obs, w, 200000, 99);
  EXPECT_NEAR(a.horizontal_deg, mc.horizontal_deg, 0.5);
  EXPECT_NEAR(a.vertical_deg, mc.vertical_deg, 0.5);
}

TEST(Thresholds, PublishedRows) {
  const auto sg = thresholds_for_content(ContentClass::SkyOrGroundOnly);
  EXPECT_EQ(sg.alpha_min_deg, 30.0);
  EXPECT_TRUE(sg.saturation_missing());
  EXPECT_EQ(sg.basis, AngleBasis::Vertical);
  const auto ln = thresholds_for_content(ContentClass::LandscapeNoNature);
  EXPECT_EQ(ln.alpha_min_deg, 11.0);
  EXPECT_EQ(*ln.alpha_saturation_deg, 90.0);
  EXPECT_EQ(ln.basis, AngleBasis::Smaller);
  const auto lw = thresholds_for_content(ContentClass::LandscapeWithNature);
  EXPECT_EQ(lw.alpha_min_deg, 9.0);
  EXPECT_EQ(*lw.alpha_saturation_deg, 50.0);
  const auto ls = thresholds_for_content(ContentClass::LandscapeWithSkyOrGround);
  EXPECT_EQ(ls.alpha_min_deg, 14.0);
  EXPECT_EQ(*ls.alpha_saturation_deg, 54.0);
  EXPECT_EQ(ls.basis, AngleBasis::Horizontal);
}

TEST(Thresholds, Validation) {
  EXPECT_TRUE((AccessThresholds{10, 50.0, AngleBasis::Smaller}).validate().empty());
  EXPECT_FALSE((AccessThresholds{0, 50.0, AngleBasis::Smaller}).validate().empty());
  EXPECT_FALSE((AccessThresholds{60, 50.0, AngleBasis::Smaller}).validate().empty());
  EXPECT_FALSE((AccessThresholds{10, 181.0, AngleBasis::Smaller}).validate().empty());
}

TEST(Thresholds, ContentClassification) {
  using fixtures::scene;
  EXPECT_EQ(classify_content(scene(true, false, true, 10, Movement::None, 0)), ContentClass::SkyOrGroundOnly);
  EXPECT_EQ(classify_content(scene(false, true, false, 10, Movement::None, 0)), ContentClass::LandscapeNoNature);
  EXPECT_EQ(classify_content(scene(false, true, false, 10, Movement::None, 0.3)), ContentClass::LandscapeWithNature);
  EXPECT_EQ(classify_content(scene(true, true, false, 10, Movement::None, 0.3)), ContentClass::LandscapeWithNature);
  EXPECT_EQ(classify_content(scene(true, true, false, 10, Movement::None, 0)), ContentClass::LandscapeWithSkyOrGround);
}

TEST(VAccess, KnotsAndMidpoint) {
  const auto t = thresholds_for_content(ContentClass::LandscapeNoNature);
  EXPECT_EQ(v_access(11.0, t), 0.5);
  EXPECT_EQ(v_access(90.0, t), 1.0);
  EXPECT_EQ(v_access(120.0, t), 1.0);
  EXPECT_EQ(v_access(10.999, t), 0.0);
  EXPECT_DOUBLE_EQ(v_access(50.5, t), 0.75);
  EXPECT_THROW(v_access(-1.0, t), DomainError);
  EXPECT_THROW(v_access(40.0, thresholds_for_content(ContentClass::SkyOrGroundOnly)), ConfigurationRequiredError);
}

// Property: V_access is non-decreasing and stays in {0} U [0.5, 1].
TEST(VAccessProperty, MonotoneAndRange) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto cls : {ContentClass::LandscapeNoNature, ContentClass::LandscapeWithNature,
                   ContentClass::LandscapeWithSkyOrGround}) {
    const auto t = thresholds_for_content(cls);
    for (int i = 0; i < 3000; ++i) {
      const double a = 120 * unit(rng), b = 120 * unit(rng);
      const double va = v_access(std::min(a, b), t), vb = v_access(std::max(a, b), t);
      ASSERT_LE(va, vb);
      ASSERT_TRUE(va == 0.0 || (va >= 0.5 && va <= 1.0));
    }
  }
}

TEST(ViewFactor, BandsAndNatureBump) {
  EXPECT_EQ(view_factor(1.0, false), 1);
  EXPECT_EQ(view_factor(3.99, true), 1);
  EXPECT_EQ(view_factor(4.0, false), 1);
  EXPECT_EQ(view_factor(4.0, true), 2);
  EXPECT_EQ(view_factor(9.0, false), 2);
  EXPECT_EQ(view_factor(9.0, true), 3);
  EXPECT_EQ(view_factor(11.0, false), 3);
  EXPECT_EQ(view_factor(11.0, true), 3);
  EXPECT_EQ(view_factor(15.0, false), 3);
  EXPECT_EQ(view_factor(15.0, true), 4);
  EXPECT_EQ(view_factor(20.0, true), 4);
  EXPECT_EQ(view_factor(40.0, false), 4);
  EXPECT_EQ(view_factor(40.0, true), 5);
  EXPECT_EQ(view_factor(50.0, false), 5);
  EXPECT_EQ(view_factor(90.0, false), 5);
  EXPECT_THROW(view_factor(0.0, false), DomainError);
  EXPECT_THROW(view_factor(91.0, false), DomainError);
}

TEST(ViewFactorProperty, NatureNeverLowers) {
  for (double a = 0.05; a <= 90.0; a += 0.05) {
    ASSERT_GE(view_factor(a, true), view_factor(a, false));
    ASSERT_LE(view_factor(a, true) - view_factor(a, false), 1);
  }
}
