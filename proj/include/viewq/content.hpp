#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "viewq/errors.hpp"

namespace viewq {

enum class Movement { None, NearbyOnly, DistantOnly, Both };

enum class LayerBoundaryKind { GroundLandscape, LandscapeSky };

/// Height of a layer boundary as seen through a window, as a fraction of the
/// window height measured from the sill.
struct LayerBoundary {
  LayerBoundaryKind kind = LayerBoundaryKind::LandscapeSky;
  double fraction = 0.0;
};

struct LayerSet {
  bool sky = false;
  bool landscape = false;
  bool ground = false;

  bool any() const noexcept { return sky || landscape || ground; }
  int count() const noexcept { return int(sky) + int(landscape) + int(ground); }
};

/// What a window shows, declared by the user rather than inferred from images.
struct SceneDescription {
  LayerSet layers;
  double nature_fraction = 0.0;
  /// Median distance from the nearest to the farthest identified outdoor
  /// objects, measured from the window.
  double content_distance_m = 0.0;
  /// Natural landscape (or another extraordinarily preferred feature) keeps
  /// full landscape weight regardless of distance.
  bool landscape_is_predominantly_natural = false;
  Movement movement = Movement::None;
  std::vector<LayerBoundary> layer_boundaries;

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (!(nature_fraction >= 0.0 && nature_fraction <= 1.0))
      problems.emplace_back("nature_fraction must lie in [0, 1]");
    if (!std::isfinite(content_distance_m) || content_distance_m < 0.0)
      problems.emplace_back("content_distance_m must be finite and >= 0");
    if (nature_fraction > 0.0 && !layers.any())
      problems.emplace_back("nature_fraction > 0 requires at least one layer");
    for (const auto& b : layer_boundaries)
      if (!(b.fraction >= 0.0 && b.fraction <= 1.0))
        problems.emplace_back("layer boundary fraction must lie in [0, 1]");
    return problems;
  }
};

struct ContentBreakdown {
  double sky = 0.0;
  double landscape = 0.0;
  double ground = 0.0;
  double nature = 0.0;
};

struct ContentScore {
  double value = 0.0;
  ContentBreakdown breakdown;
  double wf_content_distance = 0.0;
  double wf_movement = 0.0;
  double wf_nature = 0.0;
};

inline constexpr double kLayerWeight = 0.25;

inline double layer_weight(bool present) noexcept { return present ? kLayerWeight : 0.0; }

/// Landscape weighting by content distance. Bands are (0,6], (6,20], (20,50], (50,inf).
inline double wf_content_distance(double distance_m, bool predominantly_natural) {
  if (std::isnan(distance_m) || distance_m < 0.0)
    throw DomainError("content distance must be >= 0");
  if (predominantly_natural) return 1.0;
  if (distance_m <= 6.0) return 0.0;
  if (distance_m <= 20.0) return 0.5;
  if (distance_m <= 50.0) return 0.75;
  return 1.0;
}

/// Nearby movement is distracting; when both nearby and distant movement are
/// present the nearby case wins.
inline double wf_movement(Movement movement) noexcept {
  switch (movement) {
    case Movement::DistantOnly: return 1.0;
    case Movement::None: return 0.5;
    case Movement::NearbyOnly:
    case Movement::Both: return 0.0;
  }
  return 0.0;
}

inline double wf_nature(double nature_fraction) {
  if (!(nature_fraction >= 0.0 && nature_fraction <= 1.0))
    throw DomainError("nature fraction must lie in [0, 1]");
  if (nature_fraction == 0.0) return 0.0;
  if (nature_fraction <= 0.25) return 0.5;
  if (nature_fraction <= 0.5) return 0.75;
  return 1.0;
}

inline ContentScore v_content(const SceneDescription& scene) {
  if (auto problems = scene.validate(); !problems.empty()) throw DomainError(problems.front());

  ContentScore score;
  score.wf_content_distance =
      wf_content_distance(scene.content_distance_m, scene.landscape_is_predominantly_natural);
  score.wf_movement = wf_movement(scene.movement);
  score.wf_nature = wf_nature(scene.nature_fraction);

  auto& b = score.breakdown;
  b.sky = layer_weight(scene.layers.sky);
  b.landscape = layer_weight(scene.layers.landscape) * score.wf_content_distance;
  b.ground = layer_weight(scene.layers.ground) * score.wf_movement;
  b.nature = layer_weight(scene.nature_fraction > 0.0) * score.wf_nature;
  score.value = b.sky + b.landscape + b.ground + b.nature;
  return score;
}

inline std::string_view to_string(Movement m) noexcept {
  switch (m) {
    case Movement::None: return "none";
    case Movement::NearbyOnly: return "nearby_only";
    case Movement::DistantOnly: return "distant_only";
    case Movement::Both: return "both";
  }
  return "none";
}

inline std::string_view to_string(LayerBoundaryKind k) noexcept {
  return k == LayerBoundaryKind::GroundLandscape ? "ground_landscape" : "landscape_sky";
}

}  // namespace viewq
