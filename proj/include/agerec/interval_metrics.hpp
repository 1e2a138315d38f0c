#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace agerec {

// Closed interval of reader ages, in years. Degenerate intervals [x, x] are
// allowed. The [0, 18] recommendation domain is enforced by prediction
// normalization, not here, so metrics can be evaluated on arbitrary ranges.
struct AgeRange {
  double lo = 0.0;
  double hi = 0.0;

  // Throws InvalidArgument unless both bounds are finite and lo <= hi.
  static AgeRange make(double lo, double hi);

  double mean() const { return 0.5 * (lo + hi); }
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }

  friend bool operator==(const AgeRange&, const AgeRange&) = default;
};

std::string to_string(const AgeRange& r);

// Parameters of the weighted metrics. alpha weights the angular penalty of
// theta-L2; beta weights hypothesis-side vs reference-side local errors in
// beta-IE. beta = 1/3 reproduces the reference worked examples; 0.4 is the
// other value quoted for reported scores and can be set here.
struct MetricConfig {
  double alpha = 0.5;
  double beta = 1.0 / 3.0;

  void validate() const;
};

// All metrics take the reference r = [a, b] first and the hypothesis
// h = [c, d] second.
double l1(const AgeRange& r, const AgeRange& h);
double l2(const AgeRange& r, const AgeRange& h);
// Cosine between h - r and (1, -1): 1 when h shrinks inside r, -1 when it
// grows outward. Defined as 1 when r == h.
double cos_theta(const AgeRange& r, const AgeRange& h);
double theta_l2(const AgeRange& r, const AgeRange& h, double alpha);
// 1 - |r ∩ h| / |hull(r, h)|; 0 for equal intervals, 1 for disjoint ones
// whatever the gap. Two equal degenerate intervals give 0.
double jaccard(const AgeRange& r, const AgeRange& h);
double jaccard_year(const AgeRange& r, const AgeRange& h);
double mu_e(const AgeRange& r, const AgeRange& h);
// Distance from the hypothesis mean to r; 0 when the mean lies inside r.
double bound_error(const AgeRange& r, const AgeRange& h);

// Weighted local error at age x: beta * dist(x, h) on ages covered only by
// r, (1 - beta) * dist(x, r) on ages covered only by h, both terms on ages
// covered by neither, 0 on ages covered by both.
double local_error(double x, const AgeRange& r, const AgeRange& h, double beta);

// Midpoint-rule integral of local_error over [min(a, c), max(b, d)]. The
// step is shrunk so that it divides the span evenly. Throws for step <= 0.
double integral_error_numeric(const AgeRange& r, const AgeRange& h, double beta,
                              double step = 1e-3);

double sym_ie(const AgeRange& r, const AgeRange& h);
// sqrt(beta * (max(0, c-a)^2 + max(0, b-d)^2)
//      + (1 - beta) * (max(0, a-c)^2 + max(0, d-b)^2))
double beta_ie(const AgeRange& r, const AgeRange& h, double beta);
// The radicand of beta_ie. Equals twice the integral of local_error.
double beta_ie_squared(const AgeRange& r, const AgeRange& h, double beta);

enum class Metric { L1, L2, ThetaL2, Jaccard, JaccardYear, MuE, BoundError, SymIE, BetaIE };

const std::vector<Metric>& all_metrics();
std::string_view metric_name(Metric m);
// Accepts the canonical names ("theta-l2", "beta-ie", "mu-e", ...) case-insensitively.
Metric parse_metric(std::string_view name);

double compute_metric(Metric m, const MetricConfig& config, const AgeRange& r, const AgeRange& h);

}  // namespace agerec
