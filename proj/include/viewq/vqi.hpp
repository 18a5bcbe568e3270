#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "viewq/errors.hpp"

namespace viewq {

enum class QualityLabel { Insufficient, Sufficient, Good, Excellent };

inline std::string_view to_string(QualityLabel label) noexcept {
  switch (label) {
    case QualityLabel::Insufficient: return "Insufficient";
    case QualityLabel::Sufficient: return "Sufficient";
    case QualityLabel::Good: return "Good";
    case QualityLabel::Excellent: return "Excellent";
  }
  return "Insufficient";
}

/// Bands are lower-inclusive: [0, .125) [.125, .375) [.375, .75) [.75, 1].
inline QualityLabel label(double value) noexcept {
  if (value < 0.125) return QualityLabel::Insufficient;
  if (value < 0.375) return QualityLabel::Sufficient;
  if (value < 0.75) return QualityLabel::Good;
  return QualityLabel::Excellent;
}

struct Weights {
  double content = 1.0;
  double access = 1.0;
  double clarity = 1.0;

  double product() const noexcept { return content * access * clarity; }
};

inline constexpr double kWeightProductTolerance = 1e-9;

struct VqiScore {
  double v_content = 0.0;
  double v_access = 0.0;
  double v_clarity = 0.0;
  Weights weights;
  double raw_value = 0.0;  // unclamped weighted product
  double value = 0.0;      // clamped to [0, 1]
  QualityLabel quality = QualityLabel::Insufficient;
};

namespace detail {
inline void require_ratio(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}
}  // namespace detail

/// Weighted product of the three sub-scores. The weights must multiply to 1;
/// the raw product may exceed 1 and is clamped for labeling.
inline VqiScore vqi_weighted(double content, double access, double clarity, const Weights& k) {
  detail::require_ratio(content, "V_content");
  detail::require_ratio(access, "V_access");
  detail::require_ratio(clarity, "V_clarity");
  if (!(k.content > 0.0 && k.access > 0.0 && k.clarity > 0.0))
    throw ValidationError("weights must be positive");
  const double product = k.product();
  if (!(std::abs(product - 1.0) <= kWeightProductTolerance))
    throw ValidationError("weight product must equal 1, got " + std::to_string(product));

  VqiScore s{content, access, clarity, k, 0.0, 0.0, QualityLabel::Insufficient};
  s.raw_value = (k.content * content) * (k.access * access) * (k.clarity * clarity);
  s.value = std::clamp(s.raw_value, 0.0, 1.0);
  s.quality = label(s.value);
  return s;
}

inline VqiScore vqi(double content, double access, double clarity) {
  return vqi_weighted(content, access, clarity, Weights{});
}

}  // namespace viewq
