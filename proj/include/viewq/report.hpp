#pragma once

// End-to-end evaluation of a project and the text/CSV renderers. All numbers
// are written with fixed precision so identical inputs give identical bytes.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "viewq/access.hpp"
#include "viewq/clarity.hpp"
#include "viewq/compliance.hpp"
#include "viewq/content.hpp"
#include "viewq/errors.hpp"
#include "viewq/project.hpp"
#include "viewq/spatial.hpp"
#include "viewq/vqi.hpp"

namespace viewq {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class WarningCode {
  ProvisionalClarityThresholds,
  MovementBothAssumed,
  MullionBoundaryConflict,
  NoLineOfSight,
  OpeningSizeAdvisory,
  WeightedValueClamped,
  ViewFactorUndefined,
};

inline std::string_view to_string(WarningCode code) noexcept {
  switch (code) {
    case WarningCode::ProvisionalClarityThresholds: return "provisional_clarity_thresholds";
    case WarningCode::MovementBothAssumed: return "movement_both_assumed";
    case WarningCode::MullionBoundaryConflict: return "mullion_boundary_conflict";
    case WarningCode::NoLineOfSight: return "no_line_of_sight";
    case WarningCode::OpeningSizeAdvisory: return "opening_size_advisory";
    case WarningCode::WeightedValueClamped: return "weighted_value_clamped";
    case WarningCode::ViewFactorUndefined: return "view_factor_undefined";
  }
  return "unknown";
}

struct Warning {
  WarningCode code;
  std::string detail;
};

struct PairReport {
  std::string observer;
  std::string window;
  ViewAngles angles;
  bool line_of_sight = true;
  double distance_m = 0.0;
  ContentScore content;
  ContentClass content_class = ContentClass::LandscapeNoNature;
  AccessThresholds access_thresholds;
  double alpha_view_deg = 0.0;
  double v_access = 0.0;
  double beta = 1.0;
  double v_clarity = 1.0;
  VqiScore score;
  std::optional<int> view_factor;
  std::optional<MullionReport> mullions;
  std::vector<ComplianceResult> compliance;
  std::vector<Warning> warnings;
};

struct ScheduleReport {
  std::string id;
  std::string window;
  TemporalClarity clarity;
};

struct Provenance {
  std::string input_hash;
  std::string tool_version{kToolVersion};
};

struct Report {
  std::vector<PairReport> pairs;
  std::optional<SpatialAssessment> spatial;
  double multi_direction_fraction = 0.0;
  std::vector<ComplianceResult> project_compliance;
  std::vector<ScheduleReport> schedules;
  ClarityThresholds clarity_thresholds;
  std::vector<Warning> warnings;
  Provenance provenance;
};

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

/// Fixed 6-decimal rendering; tiny negatives print as zero.
inline std::string num6(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  return fmt::format("{:.6f}", v);
}

inline std::string num3(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;
  return fmt::format("{:.3f}", v);
}

namespace detail {

// Re-throws the active exception with `where` prefixed, keeping its type.
[[noreturn]] inline void rethrow_with_context(const std::string& where) {
  try {
    throw;
  } catch (const ValidationError& e) {
    std::vector<std::string> problems;
    for (const auto& p : e.problems()) problems.push_back(where + ": " + p);
    throw ValidationError(std::move(problems));
  } catch (const ConfigurationRequiredError& e) {
    throw ConfigurationRequiredError(where + ": " + e.what());
  } catch (const DegenerateGeometryError& e) {
    throw DegenerateGeometryError(where + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(where + ": " + e.what());
  }
}

inline AccessThresholds resolve_access_thresholds(const ProjectFile& project, ContentClass cls) {
  if (project.thresholds.access) return *project.thresholds.access;
  AccessThresholds t = thresholds_for_content(cls);
  if (t.saturation_missing() && project.thresholds.sky_or_ground_saturation_deg)
    t = t.with_saturation(*project.thresholds.sky_or_ground_saturation_deg);
  return t;
}

// Deepest point of the room measured from the window's wall line.
inline double room_depth(const Polygon& boundary, const WindowRect& w) {
  double depth = 0.0;
  for (const Vec2 p : boundary) {
    const Vec2 n = w.normal.xy();
    depth = std::max(depth, -dot(p - w.base_start(), n) / norm(n));
  }
  return depth;
}

}  // namespace detail

inline PairReport evaluate_pair(const ProjectFile& project, const FloorPlan& plan, const std::string& observer_id,
                                const Observer& observer, const PlanWindow& window,
                                const ClarityThresholds& clarity_thresholds, bool clarity_provisional) {
  PairReport r;
  r.observer = observer_id;
  r.window = window.id;
  const SceneDescription& scene = project.scenes.at(window.scene);

  r.angles = view_angles(observer, window.rect);
  r.line_of_sight = has_line_of_sight(observer.position, window.rect, plan);
  r.distance_m = distance_to_segment(observer.position, window.rect.base_start(), window.rect.base_end());

  r.content = v_content(scene);
  if (scene.movement == Movement::Both)
    r.warnings.push_back({WarningCode::MovementBothAssumed,
                          "nearby and distant movement both present; movement weight taken as 0"});

  r.content_class = window.content_class.value_or(classify_content(scene));
  r.access_thresholds = detail::resolve_access_thresholds(project, r.content_class);
  r.alpha_view_deg = select_angle(r.angles, r.access_thresholds.basis);
  r.v_access = v_access(r.alpha_view_deg, r.access_thresholds);
  if (!r.line_of_sight) {
    r.v_access = 0.0;
    r.warnings.push_back({WarningCode::NoLineOfSight, "sight line to the window midpoint is blocked in plan"});
  }

  if (window.shade) {
    const ShadeMaterial& material = project.materials.at(window.shade->material);
    r.beta = instantaneous_clarity(window.shade->deployed_fraction, material);
  }
  r.v_clarity = v_clarity(r.beta, clarity_thresholds);
  if (clarity_provisional)
    r.warnings.push_back({WarningCode::ProvisionalClarityThresholds,
                          fmt::format("default clarity thresholds beta_min={} beta_saturation={} are provisional",
                                      num6(clarity_thresholds.beta_min), num6(clarity_thresholds.beta_saturation))});

  r.score = vqi_weighted(r.content.value, r.v_access, r.v_clarity, project.weights.value_or(Weights{}));
  if (r.score.raw_value != r.score.value)
    r.warnings.push_back({WarningCode::WeightedValueClamped,
                          fmt::format("weighted VQI {} clamped to {}", num6(r.score.raw_value), num6(r.score.value))});

  if (r.angles.smaller_deg > 0.0 && r.angles.smaller_deg <= 90.0)
    r.view_factor = view_factor(r.angles.smaller_deg, scene.nature_fraction > 0.0);
  else
    r.warnings.push_back({WarningCode::ViewFactorUndefined, "smaller view angle outside (0, 90] degrees"});

  if (window.mullions) {
    r.mullions = mullion_obstruction(project.mullions.at(*window.mullions), window.rect.width, window.rect.height(),
                                     scene.layer_boundaries);
    for (const auto& c : r.mullions->boundary_conflicts)
      r.warnings.push_back({WarningCode::MullionBoundaryConflict,
                            fmt::format("horizontal mullion {} at {} sits on the {} boundary at {}", c.bar_index,
                                        num6(c.bar_position), to_string(c.boundary.kind), num6(c.boundary.fraction))});
  }

  if (en_opening_size_advisory(detail::room_depth(plan.boundary, window.rect), window.rect.width,
                               window.rect.height()))
    r.warnings.push_back({WarningCode::OpeningSizeAdvisory,
                          "room deeper than 4 m with a view opening smaller than 1.0 m x 1.25 m"});

  for (auto& row : en_sll_results(scene, r.angles.horizontal_deg)) r.compliance.push_back(std::move(row));
  r.compliance.push_back(leed_visual_elements_result(scene));
  r.compliance.push_back(well_view_result(r.angles.vertical_deg, scene.layers.ground || scene.layers.sky));
  for (auto& row : distance_rules(r.distance_m, window.rect.head_height)) r.compliance.push_back(std::move(row));
  if (window.wwr) r.compliance.push_back(breeam_wwr_result(r.distance_m, *window.wwr));
  return r;
}

/// Scores every observer/window pair, the floor grid, schedules and atria.
/// `input_bytes` feeds the provenance hash; `threads` only affects grid speed.
inline Report evaluate(const ProjectFile& project, std::string_view input_bytes = {}, unsigned threads = 1) {
  Report report;
  report.provenance.input_hash = fnv1a_hex(input_bytes);
  const bool clarity_provisional = !project.thresholds.clarity.has_value();
  report.clarity_thresholds = project.thresholds.clarity.value_or(ClarityThresholds{});
  if (clarity_provisional)
    report.warnings.push_back({WarningCode::ProvisionalClarityThresholds,
                               "no clarity thresholds configured; using provisional beta_min=0.500000 "
                               "beta_saturation=1.000000"});

  const FloorPlan plan = project.floor_plan();
  for (const auto& [observer_id, observer] : project.observers) {
    for (const auto& window : project.windows) {
      try {
        report.pairs.push_back(evaluate_pair(project, plan, observer_id, observer, window, report.clarity_thresholds,
                                             clarity_provisional));
      } catch (...) {
        detail::rethrow_with_context("observer '" + observer_id + "' / window '" + window.id + "'");
      }
    }
  }

  if (!project.windows.empty()) {
    try {
      report.spatial = spatial_assessment(plan, project.thresholds.spatial_qualifier, kSeatedEyeHeight, threads);
      report.multi_direction_fraction = multi_direction_fraction(plan);
    } catch (...) {
      detail::rethrow_with_context("floor plan");
    }
    for (const auto& rule : kCreditRules)
      report.project_compliance.push_back(spatial_credit_result(report.spatial->fraction(), rule));
    report.project_compliance.push_back(
        {"LEED v4.1", "multiple lines of sight", num6(report.multi_direction_fraction),
         "multiple lines of sight laterally 90° apart from each other at the viewing position",
         {{"fraction", num6(report.multi_direction_fraction)}}});
  }

  for (const auto& [id, atrium] : project.atria)
    for (const auto& standard : atrium.standards) {
      auto row = alternative_access_check(atrium.spec, parse_alternative_access_standard(standard));
      row.inputs.insert(row.inputs.begin(), {"atrium", id});
      report.project_compliance.push_back(std::move(row));
    }

  for (const auto& [id, schedule] : project.schedules) {
    try {
      auto clarity = temporal_clarity(std::span<const ScheduleStep>(schedule.steps), report.clarity_thresholds,
                                      [&](const ScheduleStep& s) -> const ShadeMaterial& {
                                        return project.materials.at(s.material_id);
                                      });
      report.schedules.push_back({id, schedule.window, std::move(clarity)});
    } catch (...) {
      detail::rethrow_with_context("schedule '" + id + "'");
    }
  }
  return report;
}

// --- renderers ----------------------------------------------------------------

inline constexpr std::string_view kGridHeader = "x,y,sees_window,best_angle_deg,qualified";

inline std::string emit_grid_csv(const SpatialAssessment& a) {
  std::string out(kGridHeader);
  out += '\n';
  for (const auto& c : a.cells)
    out += fmt::format("{},{},{},{},{}\n", num3(c.x), num3(c.y), c.sees_window ? "true" : "false",
                       num6(c.best_angle_deg), c.qualified ? "true" : "false");
  return out;
}

inline std::string emit_grid_summary_csv(const SpatialAssessment& a) {
  return fmt::format("cells,seeing,qualified,fraction\n{},{},{},{}\n", a.cells.size(), a.seeing, a.qualified,
                     num6(a.fraction()));
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string emit_compliance_csv(const std::vector<ComplianceResult>& rows) {
  std::string out = "standard,criterion,verdict,citation\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{}\n", csv_field(r.standard), csv_field(r.criterion), csv_field(r.verdict),
                       csv_field(r.citation));
  return out;
}

inline std::string emit_series_csv(const TemporalClarity& t) {
  std::string out = "timestamp,beta,v_clarity\n";
  for (const auto& s : t.series) out += fmt::format("{},{},{}\n", csv_field(s.timestamp), num6(s.beta), num6(s.v_clarity));
  return out;
}

inline std::string emit_scores_csv(const Report& report) {
  std::string out =
      "observer,window,horizontal_deg,vertical_deg,smaller_deg,v_content,v_access,v_clarity,vqi_raw,vqi,label\n";
  for (const auto& p : report.pairs)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(p.observer), csv_field(p.window),
                       num6(p.angles.horizontal_deg), num6(p.angles.vertical_deg), num6(p.angles.smaller_deg),
                       num6(p.content.value), num6(p.v_access), num6(p.v_clarity), num6(p.score.raw_value),
                       num6(p.score.value), to_string(p.score.quality));
  return out;
}

inline std::vector<ComplianceResult> all_compliance_rows(const Report& report) {
  std::vector<ComplianceResult> rows;
  for (const auto& p : report.pairs) rows.insert(rows.end(), p.compliance.begin(), p.compliance.end());
  rows.insert(rows.end(), report.project_compliance.begin(), report.project_compliance.end());
  return rows;
}

inline std::string format_report_text(const Report& report) {
  std::string out;
  auto line = [&](const std::string& s) {
    out += s;
    out += '\n';
  };
  line("View quality report");
  line(fmt::format("tool {}  input {}", report.provenance.tool_version, report.provenance.input_hash));
  line(fmt::format("clarity thresholds: beta_min {}  beta_saturation {}", num6(report.clarity_thresholds.beta_min),
                   num6(report.clarity_thresholds.beta_saturation)));
  for (const auto& w : report.warnings) line(fmt::format("warning [{}] {}", to_string(w.code), w.detail));

  for (const auto& p : report.pairs) {
    line("");
    line(fmt::format("== observer {} / window {}", p.observer, p.window));
    line(fmt::format("  angles: horizontal {}  vertical {}  smaller {}  solid angle {} sr",
                     num6(p.angles.horizontal_deg), num6(p.angles.vertical_deg), num6(p.angles.smaller_deg),
                     num6(p.angles.solid_angle_sr)));
    line(fmt::format("  distance to window {}  line of sight {}", num6(p.distance_m), p.line_of_sight ? "yes" : "no"));
    const auto& b = p.content.breakdown;
    line(fmt::format("  V_content {} ({})  = sky {} + landscape {} + ground {} + nature {}", num6(p.content.value),
                     to_string(label(p.content.value)), num6(b.sky), num6(b.landscape), num6(b.ground),
                     num6(b.nature)));
    const auto& t = p.access_thresholds;
    line(fmt::format("  V_access {}  content class {}  alpha_view {} ({})  alpha_min {}  alpha_saturation {}",
                     num6(p.v_access), to_string(p.content_class), num6(p.alpha_view_deg), to_string(t.basis),
                     num6(t.alpha_min_deg), t.alpha_saturation_deg ? num6(*t.alpha_saturation_deg) : "-"));
    line(fmt::format("  V_clarity {}  beta {}", num6(p.v_clarity), num6(p.beta)));
    line(fmt::format("  VQI {} ({})  raw {}  weights {} {} {}", num6(p.score.value), to_string(p.score.quality),
                     num6(p.score.raw_value), num6(p.score.weights.content), num6(p.score.weights.access),
                     num6(p.score.weights.clarity)));
    if (p.view_factor) line(fmt::format("  view factor {}", *p.view_factor));
    if (p.mullions)
      line(fmt::format("  mullions occlude {} of the glazing, {} boundary conflict(s)",
                       num6(p.mullions->occluded_fraction), p.mullions->boundary_conflicts.size()));
    for (const auto& c : p.compliance)
      line(fmt::format("  [{}] {}: {}  ({})", c.standard, c.criterion, c.verdict, c.citation));
    for (const auto& w : p.warnings) line(fmt::format("  warning [{}] {}", to_string(w.code), w.detail));
  }

  if (report.spatial) {
    const auto& s = *report.spatial;
    line("");
    line("== spatial assessment");
    line(fmt::format("  cells {}  seeing a window {}  qualified {}  fraction {}  grid {} m", s.cells.size(), s.seeing,
                     s.qualified, num6(s.fraction()), num6(s.grid_spacing_m)));
    if (s.qualifier)
      line(fmt::format("  qualifier: alpha_min {} ({})", num6(s.qualifier->alpha_min_deg), to_string(s.qualifier->basis)));
    line(fmt::format("  two-direction access fraction {}", num6(report.multi_direction_fraction)));
  }
  if (!report.project_compliance.empty()) {
    line("");
    line("== project compliance");
    for (const auto& c : report.project_compliance)
      line(fmt::format("  [{}] {}: {}  ({})", c.standard, c.criterion, c.verdict, c.citation));
  }
  for (const auto& s : report.schedules) {
    line("");
    line(fmt::format("== schedule {} (window {})", s.id, s.window));
    line(fmt::format("  occupied steps {}  fraction at or above beta_min {}  mean V_clarity {}", s.clarity.series.size(),
                     num6(s.clarity.fraction_above_min), num6(s.clarity.mean_v_clarity)));
  }
  return out;
}

}  // namespace viewq
