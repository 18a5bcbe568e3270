#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "viewq/content.hpp"
#include "viewq/errors.hpp"
#include "viewq/knee.hpp"

namespace viewq {

/// Shade fabric optics. Both values are fractions, not percentages.
struct ShadeMaterial {
  std::string name;
  double openness_factor = 0.0;
  double visible_transmittance = 1.0;

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (!(visible_transmittance > 0.0 && visible_transmittance <= 1.0))
      problems.emplace_back("visible transmittance must lie in (0, 1]");
    if (!(openness_factor >= 0.0 && openness_factor <= 1.0))
      problems.emplace_back("openness factor must lie in [0, 1]");
    else if (openness_factor > visible_transmittance)
      problems.emplace_back("openness factor cannot exceed visible transmittance");
    return problems;
  }
};

/// View clarity index of a fabric shade, clamped to [0, 1].
inline double vci(double openness_factor, double visible_transmittance) {
  if (std::isnan(openness_factor) || std::isnan(visible_transmittance) || openness_factor < 0.0 ||
      visible_transmittance < 0.0)
    throw DomainError("vci: optical properties must be non-negative fractions");
  if (visible_transmittance == 0.0) {
    if (openness_factor > 0.0) throw DomainError("vci: openness factor > 0 with zero transmittance");
    return 0.0;
  }
  const double raw = 1.43 * std::pow(openness_factor, 0.48) +
                     0.64 * std::pow(openness_factor / visible_transmittance, 1.1) - 0.22;
  return std::clamp(raw, 0.0, 1.0);
}

inline double vci(const ShadeMaterial& material) {
  if (auto problems = material.validate(); !problems.empty()) throw DomainError(problems.front());
  return vci(material.openness_factor, material.visible_transmittance);
}

/// Area-weighted clarity of a window with `deployed_fraction` of it behind the shade.
inline double instantaneous_clarity(double deployed_fraction, const ShadeMaterial& material) {
  if (!(deployed_fraction >= 0.0 && deployed_fraction <= 1.0))
    throw DomainError("deployed fraction must lie in [0, 1]");
  return (1.0 - deployed_fraction) * 1.0 + deployed_fraction * vci(material);
}

struct ClarityThresholds {
  double beta_min = 0.5;
  double beta_saturation = 1.0;

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (!(beta_min > 0.0 && beta_min < beta_saturation && beta_saturation <= 1.0))
      problems.emplace_back("clarity thresholds must satisfy 0 < beta_min < beta_saturation <= 1");
    return problems;
  }
};

inline double v_clarity(double beta, const ClarityThresholds& thresholds) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("clarity must lie in [0, 1]");
  if (auto problems = thresholds.validate(); !problems.empty()) throw DomainError(problems.front());
  return knee_score(beta, thresholds.beta_min, thresholds.beta_saturation);
}

// --- mullions ---------------------------------------------------------------

struct MullionBar {
  double position = 0.5;  // bar centerline, fraction of window height (horizontal) or width (vertical)
  double thickness_m = 0.05;
};

struct MullionLayout {
  std::vector<MullionBar> horizontal;
  std::vector<MullionBar> vertical;

  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    for (const auto* bars : {&horizontal, &vertical})
      for (const auto& bar : *bars) {
        if (!(bar.position >= 0.0 && bar.position <= 1.0))
          problems.emplace_back("mullion position must lie in [0, 1]");
        if (!(bar.thickness_m >= 0.0)) problems.emplace_back("mullion thickness must be >= 0");
      }
    return problems;
  }
};

struct BoundaryConflict {
  std::size_t bar_index = 0;
  double bar_position = 0.0;
  LayerBoundary boundary;
};

struct MullionReport {
  double occluded_fraction = 0.0;
  std::vector<BoundaryConflict> boundary_conflicts;
};

inline constexpr double kBoundaryConflictTolerance = 0.02;

namespace detail {

// Total length of the union of bar extents along one window axis of length `extent`.
inline double covered_length(std::span<const MullionBar> bars, double extent) {
  std::vector<std::pair<double, double>> spans;
  for (const auto& bar : bars) {
    const double c = bar.position * extent;
    const double lo = std::max(0.0, c - 0.5 * bar.thickness_m);
    const double hi = std::min(extent, c + 0.5 * bar.thickness_m);
    if (hi > lo) spans.emplace_back(lo, hi);
  }
  std::sort(spans.begin(), spans.end());
  double total = 0.0, cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& [lo, hi] : spans) {
    if (lo > cur_hi) {
      if (cur_hi > cur_lo) total += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    } else {
      cur_hi = std::max(cur_hi, hi);
    }
  }
  if (cur_hi > cur_lo) total += cur_hi - cur_lo;
  return total;
}

}  // namespace detail

/// Share of the glazing hidden by mullions, plus horizontal bars that sit on
/// a declared ground/landscape or landscape/sky boundary.
inline MullionReport mullion_obstruction(const MullionLayout& layout, double window_width_m,
                                         double window_height_m, std::span<const LayerBoundary> boundaries,
                                         double tolerance = kBoundaryConflictTolerance) {
  if (auto problems = layout.validate(); !problems.empty()) throw DomainError(problems.front());
  if (!(window_width_m > 0.0 && window_height_m > 0.0)) throw DomainError("window extents must be > 0");

  const double rows = detail::covered_length(layout.horizontal, window_height_m);
  const double cols = detail::covered_length(layout.vertical, window_width_m);
  const double area = window_width_m * window_height_m;

  MullionReport report;
  report.occluded_fraction = (window_width_m * rows + window_height_m * cols - rows * cols) / area;
  for (std::size_t i = 0; i < layout.horizontal.size(); ++i)
    for (const auto& b : boundaries)
      if (std::abs(layout.horizontal[i].position - b.fraction) <= tolerance)
        report.boundary_conflicts.push_back({i, layout.horizontal[i].position, b});
  return report;
}

// --- schedules --------------------------------------------------------------

struct ScheduleStep {
  std::string timestamp;
  bool occupied = true;
  double deployed_fraction = 0.0;
  std::string material_id;
};

struct ClaritySample {
  std::string timestamp;
  double beta = 1.0;
  double v_clarity = 1.0;
};

struct TemporalClarity {
  double fraction_above_min = 0.0;
  double mean_v_clarity = 0.0;
  std::vector<ClaritySample> series;  // occupied steps only
};

/// Clarity statistics over the occupied steps of a shade schedule.
/// `material_of` maps a step to its shade material.
template <typename MaterialLookup>
TemporalClarity temporal_clarity(std::span<const ScheduleStep> steps, const ClarityThresholds& thresholds,
                                 MaterialLookup&& material_of) {
  TemporalClarity out;
  std::size_t above = 0;
  double sum = 0.0;
  for (const auto& step : steps) {
    if (!step.occupied) continue;
    const ShadeMaterial& material = material_of(step);
    const double beta = instantaneous_clarity(step.deployed_fraction, material);
    const double score = v_clarity(beta, thresholds);
    if (beta >= thresholds.beta_min) ++above;
    sum += score;
    out.series.push_back({step.timestamp, beta, score});
  }
  if (out.series.empty()) throw DomainError("schedule has no occupied timesteps");
  out.fraction_above_min = double(above) / double(out.series.size());
  out.mean_v_clarity = sum / double(out.series.size());
  return out;
}

}  // namespace viewq
