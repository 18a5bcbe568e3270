#pragma once

#include <cmath>

#include "viewq/errors.hpp"

namespace viewq {

/// Two-knee rescale shared by the access and clarity scores.
///
/// Below `lower` the score is 0, at `lower` it is exactly 0.5, at or above
/// `upper` it is exactly 1, and in between it rises linearly from 0.5 to 1.
inline double knee_score(double x, double lower, double upper) {
  if (!(lower < upper)) throw DomainError("knee_score: lower knee must be below upper knee");
  if (std::isnan(x)) throw DomainError("knee_score: NaN input");
  if (x < lower) return 0.0;
  if (x >= upper) return 1.0;
  if (x == lower) return 0.5;
  return 0.5 + 0.5 * (x - lower) / (upper - lower);
}

}  // namespace viewq
