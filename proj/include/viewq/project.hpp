#pragma once

// Project documents: one JSON file describing scenes, the floor plan with its
// windows, observers, shade materials, mullions, schedules and threshold
// overrides. Parsing collects every problem before failing.

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "viewq/access.hpp"
#include "viewq/clarity.hpp"
#include "viewq/compliance.hpp"
#include "viewq/content.hpp"
#include "viewq/errors.hpp"
#include "viewq/spatial.hpp"
#include "viewq/vqi.hpp"

namespace viewq {

inline constexpr int kSchemaVersion = 1;

struct ShadeState {
  std::string material;
  double deployed_fraction = 0.0;
  friend bool operator==(const ShadeState&, const ShadeState&) = default;
};

struct PlanWindow {
  std::string id;
  WindowRect rect;
  std::string scene;
  std::optional<ShadeState> shade;
  std::optional<std::string> mullions;
  std::optional<double> wwr;
  std::optional<ContentClass> content_class;
};

struct Schedule {
  std::string window;
  std::vector<ScheduleStep> steps;
};

struct NamedAtrium {
  AtriumSpec spec;
  std::vector<std::string> standards;
};

struct ThresholdOverrides {
  std::optional<AccessThresholds> access;
  std::optional<double> sky_or_ground_saturation_deg;
  std::optional<ClarityThresholds> clarity;
  std::optional<AccessThresholds> spatial_qualifier;
};

struct ProjectFile {
  int schema_version = kSchemaVersion;
  std::map<std::string, SceneDescription> scenes;
  Polygon boundary;
  std::vector<Polygon> obstructions;
  std::vector<PlanWindow> windows;
  double grid_spacing_m = 0.5;
  std::optional<Polygon> occupied_region;
  std::map<std::string, Observer> observers;
  std::map<std::string, ShadeMaterial> materials;
  std::map<std::string, MullionLayout> mullions;
  std::map<std::string, Schedule> schedules;
  std::map<std::string, NamedAtrium> atria;
  ThresholdOverrides thresholds;
  std::optional<Weights> weights;

  FloorPlan floor_plan() const {
    FloorPlan plan{boundary, obstructions, {}, grid_spacing_m, occupied_region};
    for (const auto& w : windows) plan.windows.push_back(w.rect);
    return plan;
  }

  const PlanWindow* find_window(std::string_view id) const {
    for (const auto& w : windows)
      if (w.id == id) return &w;
    return nullptr;
  }
};

// Structural equality, used by the round-trip tests.
inline bool operator==(const LayerSet& a, const LayerSet& b) {
  return a.sky == b.sky && a.landscape == b.landscape && a.ground == b.ground;
}
inline bool operator==(const LayerBoundary& a, const LayerBoundary& b) {
  return a.kind == b.kind && a.fraction == b.fraction;
}
inline bool operator==(const SceneDescription& a, const SceneDescription& b) {
  return a.layers == b.layers && a.nature_fraction == b.nature_fraction &&
         a.content_distance_m == b.content_distance_m &&
         a.landscape_is_predominantly_natural == b.landscape_is_predominantly_natural &&
         a.movement == b.movement && a.layer_boundaries == b.layer_boundaries;
}
inline bool operator==(const WindowRect& a, const WindowRect& b) {
  return a.origin == b.origin && a.u == b.u && a.v == b.v && a.normal == b.normal && a.width == b.width &&
         a.sill_height == b.sill_height && a.head_height == b.head_height;
}
inline bool operator==(const Observer& a, const Observer& b) {
  return a.position == b.position && a.eye_height == b.eye_height;
}
inline bool operator==(const ShadeMaterial& a, const ShadeMaterial& b) {
  return a.name == b.name && a.openness_factor == b.openness_factor &&
         a.visible_transmittance == b.visible_transmittance;
}
inline bool operator==(const MullionBar& a, const MullionBar& b) {
  return a.position == b.position && a.thickness_m == b.thickness_m;
}
inline bool operator==(const MullionLayout& a, const MullionLayout& b) {
  return a.horizontal == b.horizontal && a.vertical == b.vertical;
}
inline bool operator==(const ScheduleStep& a, const ScheduleStep& b) {
  return a.timestamp == b.timestamp && a.occupied == b.occupied && a.deployed_fraction == b.deployed_fraction &&
         a.material_id == b.material_id;
}
inline bool operator==(const AccessThresholds& a, const AccessThresholds& b) {
  return a.alpha_min_deg == b.alpha_min_deg && a.alpha_saturation_deg == b.alpha_saturation_deg &&
         a.basis == b.basis;
}
inline bool operator==(const ClarityThresholds& a, const ClarityThresholds& b) {
  return a.beta_min == b.beta_min && a.beta_saturation == b.beta_saturation;
}
inline bool operator==(const Weights& a, const Weights& b) {
  return a.content == b.content && a.access == b.access && a.clarity == b.clarity;
}
inline bool operator==(const AtriumSpec& a, const AtriumSpec& b) {
  return a.kind == b.kind && a.width_m == b.width_m && a.depth_m == b.depth_m &&
         a.content_distance_m == b.content_distance_m && a.visual_features == b.visual_features &&
         a.exterior_view_from_all_primary_spaces == b.exterior_view_from_all_primary_spaces;
}
inline bool operator==(const PlanWindow& a, const PlanWindow& b) {
  return a.id == b.id && a.rect == b.rect && a.scene == b.scene && a.shade == b.shade &&
         a.mullions == b.mullions && a.wwr == b.wwr && a.content_class == b.content_class;
}
inline bool operator==(const Schedule& a, const Schedule& b) { return a.window == b.window && a.steps == b.steps; }
inline bool operator==(const NamedAtrium& a, const NamedAtrium& b) {
  return a.spec == b.spec && a.standards == b.standards;
}
inline bool operator==(const ThresholdOverrides& a, const ThresholdOverrides& b) {
  return a.access == b.access && a.sky_or_ground_saturation_deg == b.sky_or_ground_saturation_deg &&
         a.clarity == b.clarity && a.spatial_qualifier == b.spatial_qualifier;
}
inline bool operator==(const ProjectFile& a, const ProjectFile& b) {
  return a.schema_version == b.schema_version && a.scenes == b.scenes && a.boundary == b.boundary &&
         a.obstructions == b.obstructions && a.windows == b.windows && a.grid_spacing_m == b.grid_spacing_m &&
         a.occupied_region == b.occupied_region && a.observers == b.observers && a.materials == b.materials &&
         a.mullions == b.mullions && a.schedules == b.schedules && a.atria == b.atria &&
         a.thresholds == b.thresholds && a.weights == b.weights;
}

/// Parses an optics value written either as a fraction ("0.05", 0.05) or a
/// percentage ("5%"). Returns nullopt on malformed text.
inline std::optional<double> parse_fraction(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  bool percent = false;
  if (!text.empty() && text.back() == '%') {
    percent = true;
    text = trim(text.substr(0, text.size() - 1));
  }
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return percent ? value / 100.0 : value;
}

// --- schedule CSV -------------------------------------------------------------

inline constexpr std::string_view kScheduleHeader = "timestamp,occupied,deployed_fraction,material_id";

inline std::vector<ScheduleStep> parse_schedule_csv(std::string_view text, const std::string& source = "schedule") {
  std::vector<ScheduleStep> steps;
  std::vector<std::string> problems;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line != kScheduleHeader)
        problems.push_back(source + ":" + std::to_string(line_no) + ": expected header '" +
                           std::string(kScheduleHeader) + "'");
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() != 4) {
      problems.push_back(source + ":" + std::to_string(line_no) + ": expected 4 columns");
      continue;
    }
    ScheduleStep step;
    step.timestamp = cols[0];
    if (cols[1] == "1" || cols[1] == "true") step.occupied = true;
    else if (cols[1] == "0" || cols[1] == "false") step.occupied = false;
    else problems.push_back(source + ":" + std::to_string(line_no) + ": occupied must be 0/1/true/false");
    const auto fraction = parse_fraction(cols[2]);
    if (!fraction) problems.push_back(source + ":" + std::to_string(line_no) + ": malformed number '" + cols[2] + "'");
    else step.deployed_fraction = *fraction;
    step.material_id = cols[3];
    steps.push_back(std::move(step));
  }
  if (!header_seen) problems.push_back(source + ": empty schedule file");
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return steps;
}

// --- JSON reading -------------------------------------------------------------

namespace detail {

using nlohmann::json;

class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& path, const std::string& msg) { problems.push_back(path + ": " + msg); }

  const json* field(const json& obj, const std::string& key, const std::string& path, bool required) {
    if (!obj.is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path, bool required,
                               bool allow_text = false) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    if (v->is_number()) return v->get<double>();
    if (allow_text && v->is_string()) {
      if (auto parsed = parse_fraction(v->get<std::string>())) return parsed;
    }
    fail(path + "/" + key, "malformed number");
    return std::nullopt;
  }

  double number_or(const json& obj, const std::string& key, const std::string& path, double fallback,
                   bool allow_text = false) {
    return number(obj, key, path, false, allow_text).value_or(fallback);
  }

  std::optional<std::string> text(const json& obj, const std::string& key, const std::string& path, bool required) {
    const json* v = field(obj, key, path, required);
    if (!v) return std::nullopt;
    if (v->is_string()) return v->get<std::string>();
    fail(path + "/" + key, "expected a string");
    return std::nullopt;
  }

  bool flag(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    const json* v = field(obj, key, path, false);
    if (!v) return fallback;
    if (v->is_boolean()) return v->get<bool>();
    fail(path + "/" + key, "expected true or false");
    return fallback;
  }

  std::optional<Vec2> point2(const json& v, const std::string& path) {
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return Vec2{v[0].get<double>(), v[1].get<double>()};
    fail(path, "expected [x, y]");
    return std::nullopt;
  }

  std::optional<Vec3> point3(const json& obj, const std::string& key, const std::string& path, bool required,
                             std::optional<Vec3> fallback = std::nullopt) {
    const json* v = field(obj, key, path, required);
    if (!v) return fallback;
    if (v->is_array() && v->size() == 3 && (*v)[0].is_number() && (*v)[1].is_number() && (*v)[2].is_number())
      return Vec3{(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
    fail(path + "/" + key, "expected [x, y, z]");
    return fallback;
  }

  std::optional<Polygon> polygon(const json& v, const std::string& path) {
    if (!v.is_array()) {
      fail(path, "expected an array of [x, y] points");
      return std::nullopt;
    }
    Polygon poly;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (auto p = point2(v[i], path + "/" + std::to_string(i))) poly.push_back(*p);
    if (poly.size() < 3) {
      fail(path, "polygon needs at least 3 points");
      return std::nullopt;
    }
    return poly;
  }

  template <typename Enum, std::size_t N>
  std::optional<Enum> choice(const json& obj, const std::string& key, const std::string& path, bool required,
                             const std::array<std::pair<std::string_view, Enum>, N>& table) {
    auto t = text(obj, key, path, required);
    if (!t) return std::nullopt;
    for (const auto& [name, value] : table)
      if (name == *t) return value;
    fail(path + "/" + key, "unknown value '" + *t + "'");
    return std::nullopt;
  }

  void collect(const std::vector<std::string>& found, const std::string& path) {
    for (const auto& p : found) fail(path, p);
  }
};

inline constexpr std::array<std::pair<std::string_view, Movement>, 4> kMovementNames{{
    {"none", Movement::None},
    {"nearby_only", Movement::NearbyOnly},
    {"distant_only", Movement::DistantOnly},
    {"both", Movement::Both},
}};

inline constexpr std::array<std::pair<std::string_view, LayerBoundaryKind>, 2> kBoundaryNames{{
    {"ground_landscape", LayerBoundaryKind::GroundLandscape},
    {"landscape_sky", LayerBoundaryKind::LandscapeSky},
}};

inline constexpr std::array<std::pair<std::string_view, AngleBasis>, 3> kBasisNames{{
    {"horizontal", AngleBasis::Horizontal},
    {"vertical", AngleBasis::Vertical},
    {"smaller", AngleBasis::Smaller},
}};

inline constexpr std::array<std::pair<std::string_view, ContentClass>, 4> kContentClassNames{{
    {"sky_or_ground_only", ContentClass::SkyOrGroundOnly},
    {"landscape_no_nature", ContentClass::LandscapeNoNature},
    {"landscape_with_nature", ContentClass::LandscapeWithNature},
    {"landscape_with_sky_or_ground", ContentClass::LandscapeWithSkyOrGround},
}};

inline constexpr std::array<std::pair<std::string_view, AtriumKind>, 2> kAtriumKindNames{{
    {"courtyard", AtriumKind::Courtyard},
    {"atrium", AtriumKind::Atrium},
}};

inline SceneDescription read_scene(Reader& r, const json& j, const std::string& path) {
  SceneDescription s;
  if (const json* layers = r.field(j, "layers", path, true)) {
    if (!layers->is_array()) r.fail(path + "/layers", "expected an array");
    else
      for (const auto& l : *layers) {
        const std::string name = l.is_string() ? l.get<std::string>() : std::string();
        if (name == "sky") s.layers.sky = true;
        else if (name == "landscape") s.layers.landscape = true;
        else if (name == "ground") s.layers.ground = true;
        else r.fail(path + "/layers", "unknown layer '" + name + "'");
      }
  }
  s.nature_fraction = r.number_or(j, "nature_fraction", path, 0.0, true);
  s.content_distance_m = r.number(j, "content_distance_m", path, true).value_or(0.0);
  s.landscape_is_predominantly_natural = r.flag(j, "landscape_is_predominantly_natural", path, false);
  s.movement = r.choice(j, "movement", path, false, kMovementNames).value_or(Movement::None);
  if (const json* bounds = r.field(j, "layer_boundaries", path, false)) {
    if (!bounds->is_array()) r.fail(path + "/layer_boundaries", "expected an array");
    else
      for (std::size_t i = 0; i < bounds->size(); ++i) {
        const std::string bp = path + "/layer_boundaries/" + std::to_string(i);
        LayerBoundary b;
        b.kind = r.choice((*bounds)[i], "kind", bp, true, kBoundaryNames).value_or(LayerBoundaryKind::LandscapeSky);
        b.fraction = r.number((*bounds)[i], "fraction", bp, true).value_or(0.0);
        s.layer_boundaries.push_back(b);
      }
  }
  r.collect(s.validate(), path);
  return s;
}

inline std::optional<AccessThresholds> read_access_thresholds(Reader& r, const json& j, const std::string& path,
                                                              bool saturation_required) {
  AccessThresholds t;
  const auto lo = r.number(j, "alpha_min_deg", path, true);
  t.alpha_saturation_deg = r.number(j, "alpha_saturation_deg", path, saturation_required);
  t.basis = r.choice(j, "basis", path, true, kBasisNames).value_or(AngleBasis::Smaller);
  if (!lo) return std::nullopt;
  t.alpha_min_deg = *lo;
  r.collect(t.validate(), path);
  return t;
}

inline Observer read_observer(Reader& r, const json& j, const std::string& path) {
  Observer o;
  if (const json* p = r.field(j, "position", path, true))
    if (auto pt = r.point2(*p, path + "/position")) o.position = *pt;
  o.eye_height = r.number_or(j, "eye_height", path, kSeatedEyeHeight);
  if (!(o.eye_height > 0.0)) r.fail(path + "/eye_height", "must be > 0");
  return o;
}

inline ShadeMaterial read_material(Reader& r, const json& j, const std::string& path, const std::string& id) {
  ShadeMaterial m;
  m.name = r.text(j, "name", path, false).value_or(id);
  m.openness_factor = r.number(j, "of", path, true, true).value_or(0.0);
  m.visible_transmittance = r.number(j, "tv", path, true, true).value_or(1.0);
  r.collect(m.validate(), path);
  return m;
}

inline std::vector<MullionBar> read_bars(Reader& r, const json& j, const std::string& key, const std::string& path) {
  std::vector<MullionBar> bars;
  const json* arr = r.field(j, key, path, false);
  if (!arr) return bars;
  if (!arr->is_array()) {
    r.fail(path + "/" + key, "expected an array");
    return bars;
  }
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string bp = path + "/" + key + "/" + std::to_string(i);
    MullionBar bar;
    bar.position = r.number((*arr)[i], "position", bp, true).value_or(0.0);
    bar.thickness_m = r.number((*arr)[i], "thickness_m", bp, true).value_or(0.0);
    bars.push_back(bar);
  }
  return bars;
}

inline std::vector<ScheduleStep> read_steps(Reader& r, const json& j, const std::string& path) {
  std::vector<ScheduleStep> steps;
  if (!j.is_array()) {
    r.fail(path, "expected an array");
    return steps;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sp = path + "/" + std::to_string(i);
    ScheduleStep s;
    s.timestamp = r.text(j[i], "timestamp", sp, true).value_or("");
    s.occupied = r.flag(j[i], "occupied", sp, true);
    s.deployed_fraction = r.number(j[i], "deployed_fraction", sp, true, true).value_or(0.0);
    s.material_id = r.text(j[i], "material", sp, true).value_or("");
    steps.push_back(std::move(s));
  }
  return steps;
}

template <typename T, typename Fn>
std::map<std::string, T> read_named(Reader& r, const json& root, const std::string& key, bool required, Fn&& read_one) {
  std::map<std::string, T> out;
  const json* section = r.field(root, key, "", required);
  if (!section) return out;
  if (!section->is_object()) {
    r.fail("/" + key, "expected an object keyed by id");
    return out;
  }
  for (const auto& [id, value] : section->items()) out.emplace(id, read_one(value, "/" + key + "/" + id, id));
  return out;
}

inline std::string locate_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses a project document. `base_dir` resolves schedule CSV paths.
inline ProjectFile parse_project_text(std::string_view text, const std::filesystem::path& base_dir = {}) {
  using detail::json;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(detail::locate_offset(text, e.byte > 0 ? e.byte - 1 : 0) + ": malformed JSON (" +
                          e.what() + ")");
  }

  detail::Reader r;
  ProjectFile p;
  if (!root.is_object()) throw ValidationError("/: project document must be a JSON object");

  if (auto version = r.number(root, "schema_version", "", true)) {
    if (*version != double(kSchemaVersion))
      r.fail("/schema_version", "unknown schema version " + detail::fmt_num(*version) + " (supported: 1)");
    p.schema_version = static_cast<int>(*version);
  }

  p.scenes = detail::read_named<SceneDescription>(r, root, "scenes", true, [&](const json& j, const std::string& path,
                                                                              const std::string&) {
    return detail::read_scene(r, j, path);
  });
  p.observers = detail::read_named<Observer>(r, root, "observers", true, [&](const json& j, const std::string& path,
                                                                            const std::string&) {
    return detail::read_observer(r, j, path);
  });
  p.materials = detail::read_named<ShadeMaterial>(r, root, "materials", false,
                                                  [&](const json& j, const std::string& path, const std::string& id) {
                                                    return detail::read_material(r, j, path, id);
                                                  });
  p.mullions = detail::read_named<MullionLayout>(r, root, "mullions", false,
                                                 [&](const json& j, const std::string& path, const std::string&) {
                                                   MullionLayout m{detail::read_bars(r, j, "horizontal", path),
                                                                   detail::read_bars(r, j, "vertical", path)};
                                                   r.collect(m.validate(), path);
                                                   return m;
                                                 });

  if (const json* plan = r.field(root, "floor_plan", "", true)) {
    const std::string pp = "/floor_plan";
    if (const json* b = r.field(*plan, "boundary", pp, true))
      if (auto poly = r.polygon(*b, pp + "/boundary")) p.boundary = *poly;
    if (const json* obs = r.field(*plan, "obstructions", pp, false)) {
      if (!obs->is_array()) r.fail(pp + "/obstructions", "expected an array of polygons");
      else
        for (std::size_t i = 0; i < obs->size(); ++i)
          if (auto poly = r.polygon((*obs)[i], pp + "/obstructions/" + std::to_string(i))) p.obstructions.push_back(*poly);
    }
    p.grid_spacing_m = r.number_or(*plan, "grid_spacing_m", pp, 0.5);
    if (const json* occ = r.field(*plan, "occupied_region", pp, false))
      p.occupied_region = r.polygon(*occ, pp + "/occupied_region");

    if (const json* wins = r.field(*plan, "windows", pp, true)) {
      if (!wins->is_array()) r.fail(pp + "/windows", "expected an array");
      else
        for (std::size_t i = 0; i < wins->size(); ++i) {
          const json& wj = (*wins)[i];
          const std::string wp = pp + "/windows/" + std::to_string(i);
          PlanWindow w;
          w.id = r.text(wj, "id", wp, true).value_or("window" + std::to_string(i));
          w.rect.origin = r.point3(wj, "origin", wp, true).value_or(Vec3{});
          w.rect.u = *r.point3(wj, "u", wp, true, Vec3{1, 0, 0});
          w.rect.v = *r.point3(wj, "v", wp, false, Vec3{0, 0, 1});
          w.rect.normal = *r.point3(wj, "normal", wp, true, Vec3{0, -1, 0});
          w.rect.width = r.number(wj, "width", wp, true).value_or(1.0);
          w.rect.sill_height = r.number(wj, "sill_height", wp, true).value_or(0.0);
          w.rect.head_height = r.number(wj, "head_height", wp, true).value_or(1.0);
          w.scene = r.text(wj, "scene", wp, true).value_or("");
          if (const json* shade = r.field(wj, "shade", wp, false)) {
            ShadeState st;
            st.material = r.text(*shade, "material", wp + "/shade", true).value_or("");
            st.deployed_fraction = r.number(*shade, "deployed_fraction", wp + "/shade", true, true).value_or(0.0);
            if (!(st.deployed_fraction >= 0.0 && st.deployed_fraction <= 1.0))
              r.fail(wp + "/shade/deployed_fraction", "must lie in [0, 1]");
            w.shade = st;
          }
          w.mullions = r.text(wj, "mullions", wp, false);
          w.wwr = r.number(wj, "wwr", wp, false, true);
          w.content_class = r.choice(wj, "content_class", wp, false, detail::kContentClassNames);
          r.collect(w.rect.validate(), wp);
          p.windows.push_back(std::move(w));
        }
    }
  }

  p.schedules = detail::read_named<Schedule>(r, root, "schedules", false,
                                             [&](const json& j, const std::string& path, const std::string&) {
                                               Schedule s;
                                               s.window = r.text(j, "window", path, true).value_or("");
                                               if (const json* steps = r.field(j, "steps", path, false)) {
                                                 s.steps = detail::read_steps(r, *steps, path + "/steps");
                                               } else if (auto csv = r.text(j, "csv", path, false)) {
                                                 const auto file = base_dir / *csv;
                                                 std::ifstream in(file, std::ios::binary);
                                                 if (!in) {
                                                   r.fail(path + "/csv", "cannot read '" + file.string() + "'");
                                                 } else {
                                                   std::stringstream buf;
                                                   buf << in.rdbuf();
                                                   try {
                                                     s.steps = parse_schedule_csv(buf.str(), file.string());
                                                   } catch (const ValidationError& e) {
                                                     r.collect(e.problems(), path + "/csv");
                                                   }
                                                 }
                                               } else {
                                                 r.fail(path, "schedule needs 'steps' or 'csv'");
                                               }
                                               return s;
                                             });

  p.atria = detail::read_named<NamedAtrium>(r, root, "atria", false, [&](const json& j, const std::string& path,
                                                                        const std::string&) {
    NamedAtrium a;
    a.spec.kind = r.choice(j, "kind", path, true, detail::kAtriumKindNames).value_or(AtriumKind::Atrium);
    a.spec.width_m = r.number(j, "width_m", path, true).value_or(0.0);
    a.spec.depth_m = r.number_or(j, "depth_m", path, a.spec.width_m);
    a.spec.content_distance_m = r.number_or(j, "content_distance_m", path, 0.0);
    if (const json* f = r.field(j, "visual_features", path, false)) {
      if (f->is_array())
        for (const auto& t : *f)
          if (t.is_string()) a.spec.visual_features.push_back(t.get<std::string>());
    }
    a.spec.exterior_view_from_all_primary_spaces = r.flag(j, "exterior_view_from_all_primary_spaces", path, false);
    if (const json* st = r.field(j, "standards", path, true)) {
      if (st->is_array())
        for (const auto& s : *st) {
          const std::string id = s.is_string() ? s.get<std::string>() : std::string();
          try {
            parse_alternative_access_standard(id);
            a.standards.push_back(id);
          } catch (const ValidationError& e) {
            r.fail(path + "/standards", e.what());
          }
        }
    }
    r.collect(a.spec.validate(), path);
    return a;
  });

  if (const json* th = r.field(root, "thresholds", "", false)) {
    const std::string tp = "/thresholds";
    if (const json* a = r.field(*th, "access", tp, false))
      p.thresholds.access = detail::read_access_thresholds(r, *a, tp + "/access", true);
    p.thresholds.sky_or_ground_saturation_deg = r.number(*th, "sky_or_ground_saturation_deg", tp, false);
    if (p.thresholds.sky_or_ground_saturation_deg && !(*p.thresholds.sky_or_ground_saturation_deg > 30.0 &&
                                                       *p.thresholds.sky_or_ground_saturation_deg <= 180.0))
      r.fail(tp + "/sky_or_ground_saturation_deg", "must lie in (30, 180]");
    if (const json* c = r.field(*th, "clarity", tp, false)) {
      ClarityThresholds ct;
      ct.beta_min = r.number(*c, "beta_min", tp + "/clarity", true).value_or(0.5);
      ct.beta_saturation = r.number(*c, "beta_saturation", tp + "/clarity", true).value_or(1.0);
      r.collect(ct.validate(), tp + "/clarity");
      p.thresholds.clarity = ct;
    }
    if (const json* q = r.field(*th, "spatial_qualifier", tp, false))
      p.thresholds.spatial_qualifier = detail::read_access_thresholds(r, *q, tp + "/spatial_qualifier", false);
  }

  if (const json* w = r.field(root, "weights", "", false)) {
    Weights k;
    k.content = r.number(*w, "content", "/weights", true).value_or(1.0);
    k.access = r.number(*w, "access", "/weights", true).value_or(1.0);
    k.clarity = r.number(*w, "clarity", "/weights", true).value_or(1.0);
    if (!(k.content > 0 && k.access > 0 && k.clarity > 0)) r.fail("/weights", "weights must be positive");
    else if (std::abs(k.product() - 1.0) > kWeightProductTolerance)
      r.fail("/weights", "weight product must equal 1, got " + detail::fmt_num(k.product()));
    p.weights = k;
  }

  // cross references
  if (!p.boundary.empty()) {
    FloorPlan plan = p.floor_plan();
    r.collect(plan.validate(), "/floor_plan");
  }
  std::map<std::string, int> window_ids;
  for (std::size_t i = 0; i < p.windows.size(); ++i) {
    const auto& w = p.windows[i];
    const std::string wp = "/floor_plan/windows/" + std::to_string(i);
    if (++window_ids[w.id] > 1) r.fail(wp + "/id", "duplicate window id '" + w.id + "'");
    if (!w.scene.empty() && !p.scenes.contains(w.scene)) r.fail(wp + "/scene", "undefined scene '" + w.scene + "'");
    if (w.shade && !p.materials.contains(w.shade->material))
      r.fail(wp + "/shade/material", "undefined material '" + w.shade->material + "'");
    if (w.mullions && !p.mullions.contains(*w.mullions))
      r.fail(wp + "/mullions", "undefined mullion layout '" + *w.mullions + "'");
  }
  for (const auto& [id, s] : p.schedules) {
    if (!s.window.empty() && !window_ids.contains(s.window))
      r.fail("/schedules/" + id + "/window", "undefined window '" + s.window + "'");
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      const std::string sp = "/schedules/" + id + "/steps/" + std::to_string(i);
      if (!p.materials.contains(s.steps[i].material_id))
        r.fail(sp + "/material", "undefined material '" + s.steps[i].material_id + "'");
      if (!(s.steps[i].deployed_fraction >= 0.0 && s.steps[i].deployed_fraction <= 1.0))
        r.fail(sp + "/deployed_fraction", "must lie in [0, 1]");
    }
  }

  if (!r.problems.empty()) throw ValidationError(std::move(r.problems));
  return p;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ProjectFile parse_project(const std::filesystem::path& path) {
  return parse_project_text(read_file(path), path.parent_path());
}

// --- JSON writing -------------------------------------------------------------

namespace detail {

template <std::size_t N, typename Enum>
std::string name_of(const std::array<std::pair<std::string_view, Enum>, N>& table, Enum value) {
  for (const auto& [name, v] : table)
    if (v == value) return std::string(name);
  return {};
}

inline json to_json(Vec2 p) { return json::array({p.x, p.y}); }
inline json to_json(Vec3 p) { return json::array({p.x, p.y, p.z}); }
inline json to_json(const Polygon& poly) {
  json out = json::array();
  for (const Vec2 p : poly) out.push_back(to_json(p));
  return out;
}
inline json to_json(const AccessThresholds& t) {
  json out{{"alpha_min_deg", t.alpha_min_deg}, {"basis", name_of(kBasisNames, t.basis)}};
  if (t.alpha_saturation_deg) out["alpha_saturation_deg"] = *t.alpha_saturation_deg;
  return out;
}

}  // namespace detail

/// Serializes a project back to the document schema. Schedules loaded from
/// CSV are written inline.
inline nlohmann::json to_json(const ProjectFile& p) {
  using detail::json;
  using detail::name_of;
  json root;
  root["schema_version"] = p.schema_version;

  json scenes = json::object();
  for (const auto& [id, s] : p.scenes) {
    json layers = json::array();
    if (s.layers.sky) layers.push_back("sky");
    if (s.layers.landscape) layers.push_back("landscape");
    if (s.layers.ground) layers.push_back("ground");
    json bounds = json::array();
    for (const auto& b : s.layer_boundaries)
      bounds.push_back({{"kind", name_of(detail::kBoundaryNames, b.kind)}, {"fraction", b.fraction}});
    scenes[id] = {{"layers", layers},
                  {"nature_fraction", s.nature_fraction},
                  {"content_distance_m", s.content_distance_m},
                  {"landscape_is_predominantly_natural", s.landscape_is_predominantly_natural},
                  {"movement", name_of(detail::kMovementNames, s.movement)},
                  {"layer_boundaries", bounds}};
  }
  root["scenes"] = scenes;

  json observers = json::object();
  for (const auto& [id, o] : p.observers)
    observers[id] = {{"position", detail::to_json(o.position)}, {"eye_height", o.eye_height}};
  root["observers"] = observers;

  json materials = json::object();
  for (const auto& [id, m] : p.materials)
    materials[id] = {{"name", m.name}, {"of", m.openness_factor}, {"tv", m.visible_transmittance}};
  root["materials"] = materials;

  json mullions = json::object();
  for (const auto& [id, m] : p.mullions) {
    auto bars = [](const std::vector<MullionBar>& v) {
      json out = json::array();
      for (const auto& b : v) out.push_back({{"position", b.position}, {"thickness_m", b.thickness_m}});
      return out;
    };
    mullions[id] = {{"horizontal", bars(m.horizontal)}, {"vertical", bars(m.vertical)}};
  }
  root["mullions"] = mullions;

  json plan;
  plan["boundary"] = detail::to_json(p.boundary);
  json obs = json::array();
  for (const auto& o : p.obstructions) obs.push_back(detail::to_json(o));
  plan["obstructions"] = obs;
  plan["grid_spacing_m"] = p.grid_spacing_m;
  if (p.occupied_region) plan["occupied_region"] = detail::to_json(*p.occupied_region);
  json wins = json::array();
  for (const auto& w : p.windows) {
    json wj{{"id", w.id},
            {"origin", detail::to_json(w.rect.origin)},
            {"u", detail::to_json(w.rect.u)},
            {"v", detail::to_json(w.rect.v)},
            {"normal", detail::to_json(w.rect.normal)},
            {"width", w.rect.width},
            {"sill_height", w.rect.sill_height},
            {"head_height", w.rect.head_height},
            {"scene", w.scene}};
    if (w.shade) wj["shade"] = {{"material", w.shade->material}, {"deployed_fraction", w.shade->deployed_fraction}};
    if (w.mullions) wj["mullions"] = *w.mullions;
    if (w.wwr) wj["wwr"] = *w.wwr;
    if (w.content_class) wj["content_class"] = name_of(detail::kContentClassNames, *w.content_class);
    wins.push_back(wj);
  }
  plan["windows"] = wins;
  root["floor_plan"] = plan;

  json schedules = json::object();
  for (const auto& [id, s] : p.schedules) {
    json steps = json::array();
    for (const auto& st : s.steps)
      steps.push_back({{"timestamp", st.timestamp},
                       {"occupied", st.occupied},
                       {"deployed_fraction", st.deployed_fraction},
                       {"material", st.material_id}});
    schedules[id] = {{"window", s.window}, {"steps", steps}};
  }
  root["schedules"] = schedules;

  json atria = json::object();
  for (const auto& [id, a] : p.atria)
    atria[id] = {{"kind", name_of(detail::kAtriumKindNames, a.spec.kind)},
                 {"width_m", a.spec.width_m},
                 {"depth_m", a.spec.depth_m},
                 {"content_distance_m", a.spec.content_distance_m},
                 {"visual_features", a.spec.visual_features},
                 {"exterior_view_from_all_primary_spaces", a.spec.exterior_view_from_all_primary_spaces},
                 {"standards", a.standards}};
  root["atria"] = atria;

  json th = json::object();
  if (p.thresholds.access) th["access"] = detail::to_json(*p.thresholds.access);
  if (p.thresholds.sky_or_ground_saturation_deg) th["sky_or_ground_saturation_deg"] = *p.thresholds.sky_or_ground_saturation_deg;
  if (p.thresholds.clarity)
    th["clarity"] = {{"beta_min", p.thresholds.clarity->beta_min},
                     {"beta_saturation", p.thresholds.clarity->beta_saturation}};
  if (p.thresholds.spatial_qualifier) th["spatial_qualifier"] = detail::to_json(*p.thresholds.spatial_qualifier);
  root["thresholds"] = th;

  if (p.weights)
    root["weights"] = {{"content", p.weights->content}, {"access", p.weights->access}, {"clarity", p.weights->clarity}};
  return root;
}

}  // namespace viewq
