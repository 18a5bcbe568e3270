#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "viewq/report.hpp"

using namespace viewq;

namespace {

const std::filesystem::path kSamples{VIEWQ_SAMPLES_DIR};

struct Sample {
  std::string bytes;
  ProjectFile project;
};

Sample sample() {
  Sample s;
  s.bytes = read_file(kSamples / "office.json");
  s.project = parse_project_text(s.bytes, kSamples);
  return s;
}

const PairReport& pair(const Report& r, const std::string& obs, const std::string& win) {
  for (const auto& p : r.pairs)
    if (p.observer == obs && p.window == win) return p;
  throw std::runtime_error("pair not found");
}

bool has_warning(const std::vector<Warning>& ws, WarningCode code) {
  return std::any_of(ws.begin(), ws.end(), [&](const Warning& w) { return w.code == code; });
}

std::size_t count_lines(const std::string& s) { return std::size_t(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Report, SamplePairRecomputedByHand) {
  const auto s = sample();
  const auto r = evaluate(s.project, s.bytes);
  ASSERT_EQ(r.pairs.size(), 4u);
  const auto& p = pair(r, "desk_a", "south");

  // south window: jambs at (1,0) and (4,0), sill 0.8, head 2.4; eye (2,2) at 1.2
  const double rad = 180.0 / std::numbers::pi;
  const double h = (std::atan2(2.0, -1.0) - std::atan2(2.0, 2.0)) * rad;
  const double reach = std::hypot(0.5, 2.0);
  const double v = (std::atan2(1.2, reach) - std::atan2(-0.4, reach)) * rad;
  EXPECT_NEAR(p.angles.horizontal_deg, h, 1e-9);
  EXPECT_NEAR(p.angles.vertical_deg, v, 1e-9);

  // sky + landscape at 35 m + ground with distant movement + 30 % nature
  EXPECT_DOUBLE_EQ(p.content.value, 0.25 + 0.25 * 0.75 + 0.25 + 0.25 * 0.75);
  EXPECT_EQ(p.content_class, ContentClass::LandscapeWithNature);
  const double smaller = std::min(h, v);
  EXPECT_NEAR(p.v_access, smaller >= 50 ? 1.0 : 0.5 + 0.5 * (smaller - 9) / 41, 1e-9);

  const double fabric = 1.43 * std::pow(0.05, 0.48) + 0.64 * std::pow(0.5, 1.1) - 0.22;
  const double beta = 0.6 + 0.4 * fabric;
  EXPECT_NEAR(p.beta, beta, 1e-12);
  EXPECT_NEAR(p.v_clarity, 0.5 + 0.5 * (beta - 0.5) / 0.5, 1e-12);
  EXPECT_NEAR(p.score.value, p.content.value * p.v_access * p.v_clarity, 1e-15);
  EXPECT_TRUE(p.line_of_sight);
  ASSERT_TRUE(p.mullions);
  EXPECT_EQ(p.mullions->boundary_conflicts.size(), 1u);
  EXPECT_TRUE(has_warning(p.warnings, WarningCode::MullionBoundaryConflict));
  EXPECT_TRUE(has_warning(r.warnings, WarningCode::ProvisionalClarityThresholds));
}

TEST(Report, BlockedPairScoresZeroAccess) {
  auto s = sample();
  // behind the partition relative to the east window's midpoint
  s.project.observers["hidden"] = Observer{{4.0, 5.8}, 1.2};
  const auto r = evaluate(s.project, s.bytes);
  const auto& p = pair(r, "hidden", "east");
  EXPECT_FALSE(p.line_of_sight);
  EXPECT_EQ(p.v_access, 0.0);
  EXPECT_EQ(p.score.value, 0.0);
  EXPECT_TRUE(has_warning(p.warnings, WarningCode::NoLineOfSight));
}

TEST(Report, ProjectLevelRows) {
  const auto s = sample();
  const auto r = evaluate(s.project, s.bytes);
  ASSERT_TRUE(r.spatial);
  EXPECT_EQ(r.spatial->cells.size(), r.spatial->seeing + (r.spatial->cells.size() - r.spatial->seeing));
  EXPECT_EQ(r.project_compliance.size(), kCreditRules.size() + 1 + 3);
  ASSERT_EQ(r.schedules.size(), 1u);
  EXPECT_GT(r.schedules[0].clarity.series.size(), 0u);
}

TEST(Report, ConfiguredClarityThresholdsSilenceWarning) {
  auto s = sample();
  s.project.thresholds.clarity = ClarityThresholds{0.5, 1.0};
  const auto r = evaluate(s.project, s.bytes);
  EXPECT_FALSE(has_warning(r.warnings, WarningCode::ProvisionalClarityThresholds));
  for (const auto& p : r.pairs) EXPECT_FALSE(has_warning(p.warnings, WarningCode::ProvisionalClarityThresholds));
}

TEST(Report, ErrorsKeepTheirTypeAndGainContext) {
  auto s = sample();
  s.project.scenes.at("east_view").layers = {true, false, false};  // sky only: no saturation published
  try {
    (void)evaluate(s.project, s.bytes);
    FAIL() << "expected ConfigurationRequiredError";
  } catch (const ConfigurationRequiredError& e) {
    EXPECT_NE(std::string(e.what()).find("window 'east'"), std::string::npos) << e.what();
  }
  s.project.thresholds.sky_or_ground_saturation_deg = 60.0;
  EXPECT_NO_THROW(evaluate(s.project, s.bytes));
}

TEST(Report, MovementBothWarns) {
  auto s = sample();
  s.project.scenes.at("east_view").movement = Movement::Both;
  const auto r = evaluate(s.project, s.bytes);
  EXPECT_TRUE(has_warning(pair(r, "desk_a", "east").warnings, WarningCode::MovementBothAssumed));
}

TEST(Report, GridCsvContract) {
  const auto s = sample();
  const auto r = evaluate(s.project, s.bytes);
  const std::string csv = emit_grid_csv(*r.spatial);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,sees_window,best_angle_deg,qualified");
  EXPECT_EQ(count_lines(csv), r.spatial->cells.size() + 1);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0.250,0.250,", 0), 0u) << line;
  EXPECT_EQ(emit_grid_summary_csv(*r.spatial).substr(0, 32), "cells,seeing,qualified,fraction\n");
}

TEST(Report, OtherCsvShapes) {
  const auto s = sample();
  const auto r = evaluate(s.project, s.bytes);
  EXPECT_EQ(count_lines(emit_scores_csv(r)), r.pairs.size() + 1);
  const auto rows = all_compliance_rows(r);
  EXPECT_EQ(count_lines(emit_compliance_csv(rows)), rows.size() + 1);
  EXPECT_EQ(count_lines(emit_series_csv(r.schedules[0].clarity)), r.schedules[0].clarity.series.size() + 1);
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("plain"), "plain");
}

TEST(Report, DeterministicAcrossRunsAndThreads) {
  const auto s = sample();
  auto render = [&](unsigned t) {
    const auto r = evaluate(s.project, s.bytes, t);
    return format_report_text(r) + emit_grid_csv(*r.spatial) + emit_scores_csv(r);
  };
  const std::string one = render(1);
  EXPECT_EQ(render(1), one);
  EXPECT_EQ(render(2), one);
  EXPECT_EQ(render(4), one);
}

TEST(Report, ProvenanceHash) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  const auto s = sample();
  const auto r = evaluate(s.project, s.bytes);
  EXPECT_EQ(r.provenance.input_hash, fnv1a_hex(s.bytes));
  EXPECT_EQ(r.provenance.tool_version, kToolVersion);
  EXPECT_NE(format_report_text(r).find(r.provenance.input_hash), std::string::npos);
}

TEST(Report, NumberFormatting) {
  EXPECT_EQ(num6(0.41807201203517796), "0.418072");
  EXPECT_EQ(num6(-1e-9), "0.000000");
  EXPECT_EQ(num3(1.23456), "1.235");
}
