#include "agerec/range_prediction.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "agerec/error.hpp"

namespace agerec {

RangePrediction RangePrediction::normalize(double raw_lo, double raw_hi, double max_age) {
  if (!std::isfinite(raw_lo) || !std::isfinite(raw_hi)) {
    throw InvalidArgument("prediction bounds must be finite");
  }
  RangePrediction p;
  p.lo = raw_lo;
  p.hi = raw_hi;
  if (p.lo > p.hi) {
    std::swap(p.lo, p.hi);
    p.normalized = true;
  }
  const double lo = std::clamp(p.lo, 0.0, max_age);
  const double hi = std::clamp(p.hi, 0.0, max_age);
  if (lo != p.lo || hi != p.hi) p.normalized = true;
  p.lo = lo;
  p.hi = hi;
  p.mu = 0.5 * (p.lo + p.hi);
  return p;
}

RangePrediction aggregate_mean(std::span<const RangePrediction> predictions) {
  if (predictions.empty()) throw InvalidArgument("cannot aggregate zero predictions");
  // Summing in sorted order makes the result bit-identical under any
  // permutation of the input.
  std::vector<double> los, his;
  bool flagged = false;
  for (const auto& p : predictions) {
    los.push_back(p.lo);
    his.push_back(p.hi);
    flagged = flagged || p.normalized;
  }
  std::sort(los.begin(), los.end());
  std::sort(his.begin(), his.end());
  double lo = 0, hi = 0;
  for (double v : los) lo += v;
  for (double v : his) hi += v;
  const double n = static_cast<double>(predictions.size());
  RangePrediction out = RangePrediction::normalize(lo / n, hi / n);
  out.normalized = out.normalized || flagged;
  return out;
}

}  // namespace agerec
