#include "agerec/interval_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agerec/error.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

AgeRange AgeRange::make(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("age range bounds must be finite");
  }
  if (lo > hi) {
    std::ostringstream os;
    os << "age range lower bound " << lo << " exceeds upper bound " << hi;
    throw InvalidArgument(os.str());
  }
  return AgeRange{lo, hi};
}

std::string to_string(const AgeRange& r) {
  std::ostringstream os;
  os << "[" << r.lo << ", " << r.hi << "]";
  return os.str();
}

void MetricConfig::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  if (!std::isfinite(beta) || beta < 0.0 || beta > 1.0) {
    throw InvalidArgument("beta must lie in [0, 1]");
  }
}

double l1(const AgeRange& r, const AgeRange& h) {
  return std::abs(h.lo - r.lo) + std::abs(h.hi - r.hi);
}

double l2(const AgeRange& r, const AgeRange& h) { return std::hypot(h.lo - r.lo, h.hi - r.hi); }

double cos_theta(const AgeRange& r, const AgeRange& h) {
  if (r == h) return 1.0;
  const double c = (h.lo - r.lo - h.hi + r.hi) / (std::sqrt(2.0) * l2(r, h));
  return std::clamp(c, -1.0, 1.0);
}

double theta_l2(const AgeRange& r, const AgeRange& h, double alpha) {
  return l2(r, h) + alpha * (1.0 - cos_theta(r, h));
}

double jaccard(const AgeRange& r, const AgeRange& h) {
  const double inter = std::max(0.0, std::min(r.hi, h.hi) - std::max(r.lo, h.lo));
  const double hull = std::max(r.hi, h.hi) - std::min(r.lo, h.lo);
  if (hull <= 0.0) return 0.0;
  return 1.0 - inter / hull;
}

double jaccard_year(const AgeRange& r, const AgeRange& h) {
  return 0.5 * (std::abs(r.hi - r.lo) + std::abs(h.hi - h.lo)) * jaccard(r, h);
}

double mu_e(const AgeRange& r, const AgeRange& h) { return std::abs(r.mean() - h.mean()); }

double bound_error(const AgeRange& r, const AgeRange& h) {
  const double m = h.mean();
  if (m < r.lo) return r.lo - m;
  if (m > r.hi) return m - r.hi;
  return 0.0;
}

namespace {

double distance_to(double x, const AgeRange& i) {
  if (i.contains(x)) return 0.0;
  return std::min(std::abs(x - i.lo), std::abs(x - i.hi));
}

double sq(double v) { return v * v; }

}  // namespace

double local_error(double x, const AgeRange& r, const AgeRange& h, double beta) {
  const bool in_r = r.contains(x);
  const bool in_h = h.contains(x);
  if (in_r && in_h) return 0.0;
  if (in_r) return beta * distance_to(x, h);
  if (in_h) return (1.0 - beta) * distance_to(x, r);
  return beta * distance_to(x, h) + (1.0 - beta) * distance_to(x, r);
}

double integral_error_numeric(const AgeRange& r, const AgeRange& h, double beta, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("quadrature step must be > 0");
  const double from = std::min(r.lo, h.lo);
  const double to = std::max(r.hi, h.hi);
  const double span = to - from;
  if (span <= 0.0) return 0.0;
  const auto cells = static_cast<long long>(std::ceil(span / step));
  const double width = span / static_cast<double>(cells);
  double total = 0.0;
  for (long long k = 0; k < cells; ++k) {
    total += local_error(from + (static_cast<double>(k) + 0.5) * width, r, h, beta);
  }
  return total * width;
}

double sym_ie(const AgeRange& r, const AgeRange& h) {
  return std::sqrt((sq(r.lo - h.lo) + sq(h.hi - r.hi)) / 2.0);
}

double beta_ie_squared(const AgeRange& r, const AgeRange& h, double beta) {
  const double a = r.lo, b = r.hi, c = h.lo, d = h.hi;
  return beta * (sq(std::max(0.0, c - a)) + sq(std::max(0.0, b - d))) +
         (1.0 - beta) * (sq(std::max(0.0, a - c)) + sq(std::max(0.0, d - b)));
}

double beta_ie(const AgeRange& r, const AgeRange& h, double beta) {
  return std::sqrt(beta_ie_squared(r, h, beta));
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics = {
      Metric::L1,  Metric::L2,         Metric::ThetaL2, Metric::Jaccard, Metric::JaccardYear,
      Metric::MuE, Metric::BoundError, Metric::SymIE,   Metric::BetaIE};
  return metrics;
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::L1: return "l1";
    case Metric::L2: return "l2";
    case Metric::ThetaL2: return "theta-l2";
    case Metric::Jaccard: return "jaccard";
    case Metric::JaccardYear: return "jaccard-year";
    case Metric::MuE: return "mu-e";
    case Metric::BoundError: return "bound-error";
    case Metric::SymIE: return "sym-ie";
    case Metric::BetaIE: return "beta-ie";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  std::string key = utf8::to_lower(name);
  std::replace(key.begin(), key.end(), '_', '-');
  for (Metric m : all_metrics()) {
    if (metric_name(m) == key) return m;
  }
  if (key == "mue" || key == "mu") return Metric::MuE;
  if (key == "be") return Metric::BoundError;
  if (key == "j") return Metric::Jaccard;
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

double compute_metric(Metric m, const MetricConfig& config, const AgeRange& r, const AgeRange& h) {
  switch (m) {
    case Metric::L1: return l1(r, h);
    case Metric::L2: return l2(r, h);
    case Metric::ThetaL2: return theta_l2(r, h, config.alpha);
    case Metric::Jaccard: return jaccard(r, h);
    case Metric::JaccardYear: return jaccard_year(r, h);
    case Metric::MuE: return mu_e(r, h);
    case Metric::BoundError: return bound_error(r, h);
    case Metric::SymIE: return sym_ie(r, h);
    case Metric::BetaIE: return beta_ie(r, h, config.beta);
  }
  throw InvalidArgument("unknown metric");
}

}  // namespace agerec
