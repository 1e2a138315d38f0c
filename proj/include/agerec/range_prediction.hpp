#pragma once

#include <span>

#include "agerec/interval_metrics.hpp"

namespace agerec {

inline constexpr double kMaxAge = 18.0;

// Output of every model. Always lo <= hi, inside [0, 18], mu = (lo+hi)/2.
struct RangePrediction {
  double lo = 0, hi = 0, mu = 0;
  bool normalized = false;  // bounds were swapped or clamped

  // Swap first when lo > hi, then clamp to [0, max_age]. Non-finite raw
  // values throw InvalidArgument.
  static RangePrediction normalize(double raw_lo, double raw_hi, double max_age = kMaxAge);
  AgeRange range() const { return AgeRange{lo, hi}; }

  friend bool operator==(const RangePrediction&, const RangePrediction&) = default;
};

// Per-bound mean, then normalization. The result is flagged when any member
// was. Throws for an empty list.
RangePrediction aggregate_mean(std::span<const RangePrediction> predictions);

}  // namespace agerec
