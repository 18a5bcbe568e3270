#pragma once

// Rule checks for the window-view criteria of daylighting standards and green
// building certifications. Each verdict carries the criterion text it was
// judged against.

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "viewq/content.hpp"
#include "viewq/errors.hpp"

namespace viewq {

struct ComplianceResult {
  std::string standard;
  std::string criterion;
  std::string verdict;
  std::string citation;
  std::vector<std::pair<std::string, std::string>> inputs;

  bool passed() const { return verdict != "fail" && verdict != "Not met" && verdict != "Insufficient"; }
};

namespace detail {
inline std::string fmt_num(double v) {
  std::string s = std::to_string(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}
inline std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }
}  // namespace detail

// --- view content levels (EN 17037 / SLL LG10) ------------------------------

enum class ContentLevel { Insufficient, Minimum, Medium, High };

inline std::string_view en_name(ContentLevel l) noexcept {
  switch (l) {
    case ContentLevel::Insufficient: return "Not met";
    case ContentLevel::Minimum: return "Minimum";
    case ContentLevel::Medium: return "Medium";
    case ContentLevel::High: return "High";
  }
  return "Not met";
}

inline std::string_view sll_name(ContentLevel l) noexcept {
  switch (l) {
    case ContentLevel::Insufficient: return "Insufficient";
    case ContentLevel::Minimum: return "Sufficient";
    case ContentLevel::Medium: return "Good";
    case ContentLevel::High: return "Excellent";
  }
  return "Insufficient";
}

inline std::string_view content_level_citation(ContentLevel l) noexcept {
  switch (l) {
    case ContentLevel::Insufficient: return "Only sky or only foreground; outside distance < 6 m; horizontal sight angle < 14°";
    case ContentLevel::Minimum: return "At least landscape layer; outside distance ≥ 6 m; horizontal sight angle ≥ 14°";
    case ContentLevel::Medium: return "Landscape layer plus one other; outside distance ≥ 20 m; horizontal sight angle ≥ 28°";
    case ContentLevel::High: return "All layers; outside distance ≥ 50 m; horizontal sight angle ≥ 54°";
  }
  return "";
}

/// Highest level whose layer, distance and angle requirements all hold.
inline ContentLevel en_sll_content_level(const SceneDescription& scene, double horizontal_angle_deg) {
  const auto& L = scene.layers;
  const double d = scene.content_distance_m;
  const double a = horizontal_angle_deg;
  if (L.count() == 3 && d >= 50.0 && a >= 54.0) return ContentLevel::High;
  if (L.landscape && L.count() >= 2 && d >= 20.0 && a >= 28.0) return ContentLevel::Medium;
  if (L.landscape && d >= 6.0 && a >= 14.0) return ContentLevel::Minimum;
  return ContentLevel::Insufficient;
}

inline std::vector<ComplianceResult> en_sll_results(const SceneDescription& scene, double horizontal_angle_deg) {
  const ContentLevel level = en_sll_content_level(scene, horizontal_angle_deg);
  const std::string cite(content_level_citation(level));
  std::vector<std::pair<std::string, std::string>> inputs{
      {"layers", std::to_string(scene.layers.count())},
      {"content_distance_m", detail::fmt_num(scene.content_distance_m)},
      {"horizontal_angle_deg", detail::fmt_num(horizontal_angle_deg)}};
  return {{"EN 17037", "view content level", std::string(en_name(level)), cite, inputs},
          {"SLL LG10", "view content level", std::string(sll_name(level)), cite, inputs}};
}

/// Environmental information the view should convey at a given level.
/// Reported as advice, never as a gate.
inline std::vector<std::string> en_environmental_advisories(ContentLevel level) {
  std::vector<std::string> items;
  if (level != ContentLevel::Insufficient) items.emplace_back("location");
  items.emplace_back("time");
  items.emplace_back("weather");
  if (level == ContentLevel::Medium) items.emplace_back("nature or people (one of the two)");
  if (level == ContentLevel::High) {
    items.emplace_back("nature");
    items.emplace_back("people");
  }
  return items;
}

/// Rooms deeper than 4 m should have view openings summing to at least
/// 1.0 m wide by 1.25 m high. Returns true when that advice is not met.
inline bool en_opening_size_advisory(double room_depth_m, double opening_width_m, double opening_height_m) {
  return room_depth_m > 4.0 && (opening_width_m < 1.0 || opening_height_m < 1.25);
}

// --- visual elements (LEED v4.1, WELL v2) -----------------------------------

inline constexpr std::string_view kLeedElementsCitation =
    "at least two of the following: 1) Flora, fauna, or sky; 2) Movement; and 3) Objects at least 7.5 m "
    "from the exterior of the glazing";

inline bool leed_visual_elements(const SceneDescription& scene) noexcept {
  const int count = int(scene.nature_fraction > 0.0 || scene.layers.sky) +
                    int(scene.movement != Movement::None) + int(scene.content_distance_m >= 7.5);
  return count >= 2;
}

inline ComplianceResult leed_visual_elements_result(const SceneDescription& scene) {
  return {"LEED v4.1", "visual elements", detail::pass_fail(leed_visual_elements(scene)),
          std::string(kLeedElementsCitation),
          {{"nature_fraction", detail::fmt_num(scene.nature_fraction)},
           {"sky", scene.layers.sky ? "true" : "false"},
           {"movement", std::string(to_string(scene.movement))},
           {"content_distance_m", detail::fmt_num(scene.content_distance_m)}}};
}

inline constexpr std::string_view kWellViewCitation =
    "vertical view angle of at least 30° ... direct line of sight to: 1) The ground or; 2) Sky";

inline bool well_view_check(double vertical_angle_deg, bool sees_ground_or_sky) noexcept {
  return vertical_angle_deg >= 30.0 && sees_ground_or_sky;
}

inline ComplianceResult well_view_result(double vertical_angle_deg, bool sees_ground_or_sky) {
  return {"WELL v2", "vertical view angle", detail::pass_fail(well_view_check(vertical_angle_deg, sees_ground_or_sky)),
          std::string(kWellViewCitation),
          {{"vertical_angle_deg", detail::fmt_num(vertical_angle_deg)},
           {"sees_ground_or_sky", sees_ground_or_sky ? "true" : "false"}}};
}

// --- distance to window and window-to-wall ratio ----------------------------

inline std::vector<ComplianceResult> distance_rules(double distance_to_window_m,
                                                    std::optional<double> head_height_m = std::nullopt) {
  if (!(distance_to_window_m >= 0.0)) throw DomainError("distance to window must be >= 0");
  const std::vector<std::pair<std::string, std::string>> inputs{
      {"distance_m", detail::fmt_num(distance_to_window_m)}};
  std::vector<ComplianceResult> rows{
      {"BREEAM", "distance to window", detail::pass_fail(distance_to_window_m <= 8.0),
       "within 8 m of an external wall containing a window", inputs},
      {"WELL v2", "distance to window", detail::pass_fail(distance_to_window_m <= 10.0),
       "within 10 m of a window", inputs},
      {"DIN 5034", "distance to window", detail::pass_fail(distance_to_window_m <= 10.0),
       "within 10 m of a window", inputs}};
  if (head_height_m) {
    auto leed_inputs = inputs;
    leed_inputs.emplace_back("head_height_m", detail::fmt_num(*head_height_m));
    rows.push_back({"LEED v4.1", "distance to window",
                    detail::pass_fail(distance_to_window_m <= 3.0 * *head_height_m),
                    "within three times the head height of the window", leed_inputs});
  }
  return rows;
}

/// Minimum window-to-wall ratio for open-plan offices by depth from the window.
inline double breeam_wwr_requirement(double distance_m) {
  if (!(distance_m >= 0.0)) throw DomainError("distance must be >= 0");
  if (distance_m < 8.0) return 0.20;
  if (distance_m < 11.0) return 0.25;
  if (distance_m <= 14.0) return 0.30;
  return 0.35;
}

inline std::string_view breeam_wwr_citation(double distance_m) {
  if (distance_m < 8.0) return "20 % (< 8 m)";
  if (distance_m < 11.0) return "25 % (8 - 11 m)";
  if (distance_m <= 14.0) return "30 % (11 - 14 m)";
  return "35 % (> 14 m)";
}

inline ComplianceResult breeam_wwr_result(double distance_m, double actual_wwr) {
  const double required = breeam_wwr_requirement(distance_m);
  return {"BREEAM", "window-to-wall ratio", detail::pass_fail(actual_wwr >= required),
          std::string(breeam_wwr_citation(distance_m)),
          {{"distance_m", detail::fmt_num(distance_m)},
           {"wwr", detail::fmt_num(actual_wwr)},
           {"required_wwr", detail::fmt_num(required)}}};
}

// --- alternative access through courtyards and atria ------------------------

enum class AtriumKind { Courtyard, Atrium };

struct AtriumSpec {
  AtriumKind kind = AtriumKind::Atrium;
  double width_m = 0.0;
  double depth_m = 0.0;
  double content_distance_m = 0.0;
  std::vector<std::string> visual_features;
  bool exterior_view_from_all_primary_spaces = false;

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (!(width_m > 0.0 && depth_m > 0.0)) problems.emplace_back("atrium dimensions must be > 0");
    if (!(content_distance_m >= 0.0)) problems.emplace_back("atrium content distance must be >= 0");
    return problems;
  }
};

enum class AlternativeAccessStandard { Breeam, BreeamNor, BreeamNl, GreenGlobes, GreenStar, GreenStarNz };

inline AlternativeAccessStandard parse_alternative_access_standard(std::string_view id) {
  static constexpr std::array<std::pair<std::string_view, AlternativeAccessStandard>, 6> table{{
      {"breeam", AlternativeAccessStandard::Breeam},
      {"breeam_nor", AlternativeAccessStandard::BreeamNor},
      {"breeam_nl", AlternativeAccessStandard::BreeamNl},
      {"green_globes", AlternativeAccessStandard::GreenGlobes},
      {"green_star", AlternativeAccessStandard::GreenStar},
      {"green_star_nz", AlternativeAccessStandard::GreenStarNz},
  }};
  for (const auto& [key, value] : table)
    if (key == id) return value;
  throw ValidationError("unknown alternative-access standard '" + std::string(id) + "'");
}

inline bool is_greenery_feature(std::string_view tag) {
  static constexpr std::array<std::string_view, 8> greenery{
      "greenery", "plants", "plant_containers", "trees", "green_wall", "roof_garden", "garden", "water"};
  return std::find(greenery.begin(), greenery.end(), tag) != greenery.end();
}

inline ComplianceResult alternative_access_check(const AtriumSpec& spec, AlternativeAccessStandard standard) {
  if (auto problems = spec.validate(); !problems.empty()) throw DomainError(problems.front());
  const bool greenery = std::any_of(spec.visual_features.begin(), spec.visual_features.end(),
                                    [](const std::string& t) { return is_greenery_feature(t); });
  std::vector<std::pair<std::string, std::string>> inputs{
      {"width_m", detail::fmt_num(spec.width_m)},
      {"depth_m", detail::fmt_num(spec.depth_m)},
      {"content_distance_m", detail::fmt_num(spec.content_distance_m)},
      {"greenery", greenery ? "true" : "false"}};
  switch (standard) {
    case AlternativeAccessStandard::Breeam:
    case AlternativeAccessStandard::BreeamNor:
    case AlternativeAccessStandard::BreeamNl: {
      const char* name = standard == AlternativeAccessStandard::Breeam      ? "BREEAM"
                         : standard == AlternativeAccessStandard::BreeamNor ? "BREEAM NOR"
                                                                            : "BREEAM NL";
      return {name, "alternative access", detail::pass_fail(spec.content_distance_m >= 10.0 && greenery),
              "Minimum distance of visual content of at least 10 m. Greenery, plant containers, etc.", inputs};
    }
    case AlternativeAccessStandard::GreenGlobes:
      return {"Green Globes", "alternative access", detail::pass_fail(spec.exterior_view_from_all_primary_spaces),
              "From all primary interior spaces. Provides a view to the building exterior",
              {{"exterior_view_from_all_primary_spaces", spec.exterior_view_from_all_primary_spaces ? "true" : "false"}}};
    case AlternativeAccessStandard::GreenStar:
      return {"Green Star", "alternative access", detail::pass_fail(spec.width_m >= 8.0 && spec.depth_m >= 8.0),
              "Atria must be at least 8 x 8 m in width and depth at any viewing position inside room.", inputs};
    case AlternativeAccessStandard::GreenStarNz:
      return {"Green Star NZ", "alternative access", detail::pass_fail(spec.width_m >= 8.0),
              "Atrium must be at least 8 m in width from any viewing position inside room.", inputs};
  }
  throw ValidationError("unknown alternative-access standard");
}

// --- spatial-assessment credits ---------------------------------------------

struct CreditRule {
  std::string_view id;
  std::string_view name;
  std::array<double, 3> thresholds;  // percent of floor area; 0 marks an unused credit tier
  std::string_view citation;
};

inline constexpr std::array<CreditRule, 15> kCreditRules{{
    {"berde", "BERDE", {50, 75, 0}, "BERDE: 50 / 75"},
    {"breeam_uk", "BREEAM UK 2018", {95, 0, 0}, "BREEAM UK: 2018: 95"},
    {"breeam_international", "BREEAM International", {80, 95, 0}, "BREEAM International: 80 / 95"},
    {"gbi", "Green Building Index", {60, 75, 0}, "Green Building Index: 60 / 75"},
    {"greenship", "GreenShip", {75, 0, 0}, "GreenShip: 75"},
    {"green_star_nz", "Green Star NZ", {60, 90, 0}, "Green Star NZ: 60 / 90"},
    {"hqe", "HQE 2014", {30, 50, 75}, "HQE: 2014: 30 / 50 / 75"},
    {"igbc_v3_75", "IGBC V3 (75 %)", {75, 0, 0}, "IGBC V3: 75 or 95 (75 variant)"},
    {"igbc_v3_95", "IGBC V3 (95 %)", {95, 0, 0}, "IGBC V3: 75 or 95 (95 variant)"},
    {"leed_canada_2009", "LEED Canada 2009", {90, 0, 0}, "LEED Canada: 2009: 90"},
    {"leed_india_2011", "LEED India 2011", {90, 0, 0}, "LEED India: 2011: 90"},
    {"leed_v4.1", "LEED v4.1", {75, 0, 0}, "LEED V4.1: 75"},
    {"estidama_pearl", "Estidama Pearl", {75, 0, 0}, "Pearl Rating System for Estidama: 75"},
    {"well_v2_pilot", "WELL v2-pilot", {50, 0, 0}, "WELL V2-pilot: 50"},
    {"well_v2", "WELL v2", {75, 0, 0}, "WELL V2: 75"},
}};

inline const CreditRule& credit_rule(std::string_view certification) {
  for (const auto& rule : kCreditRules)
    if (rule.id == certification) return rule;
  throw ValidationError("unknown certification '" + std::string(certification) + "'");
}

/// Credits earned for the given share of floor area with view access.
inline int spatial_credit(double fraction, std::string_view certification) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DomainError("fraction must lie in [0, 1]");
  const CreditRule& rule = credit_rule(certification);
  // compare in percent, rounded to absorb binary noise from cell ratios
  const double percent = std::round(fraction * 100.0 * 1e9) / 1e9;
  int credits = 0;
  for (double t : rule.thresholds)
    if (t > 0.0 && percent >= t) ++credits;
  return credits;
}

inline ComplianceResult spatial_credit_result(double fraction, const CreditRule& rule) {
  const int credits = spatial_credit(fraction, rule.id);
  return {std::string(rule.name), "spatial assessment", std::to_string(credits) + " credit(s)",
          std::string(rule.citation), {{"fraction", detail::fmt_num(fraction)}}};
}

/// Case- and punctuation-insensitive prefix match of a standard name against a filter.
inline bool standard_matches(std::string_view standard, std::string_view filter) {
  auto normalize = [](std::string_view s) {
    std::string out;
    for (char c : s)
      if (std::isalnum(static_cast<unsigned char>(c))) out += char(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string f = normalize(filter);
  if (f.empty() || f == "all") return true;
  return normalize(standard).starts_with(f);
}

}  // namespace viewq
