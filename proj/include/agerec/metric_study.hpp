#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "agerec/interval_metrics.hpp"

namespace agerec {

// A reference interval, hypotheses to rank against it, and the ranking a
// human would give them (a permutation of 1..n).
struct RankStudy {
  AgeRange reference;
  std::vector<AgeRange> hypotheses;
  std::vector<double> oracle_ranks;
  std::vector<std::string> labels;  // optional, parallel to hypotheses

  void validate() const;
};

// Ranks 1..n by ascending value; tied values share the average of the ranks
// they span.
std::vector<double> average_ranks(std::span<const double> values);

// (1/n) * sum |oracle(i) - observed(i)|. Accepts fractional (tied) ranks.
double spearman_footrule(std::span<const double> oracle, std::span<const double> observed);

std::vector<double> rank_hypotheses(Metric metric, const MetricConfig& config,
                                    const RankStudy& study);

struct MetricScore {
  std::string name;
  Metric metric;
  MetricConfig config;
  double footrule = 0.0;
  std::vector<double> ranks;
};

struct StudyResult {
  std::vector<MetricScore> rows;  // ascending footrule
  double random_footrule_mean = 0.0;
  double random_footrule_std = 0.0;
  std::size_t random_trials = 0;
};

struct NamedMetric {
  Metric metric;
  MetricConfig config;
};

// Scores every metric on the study and estimates the footrule of a metric
// that assigns i.i.d. uniform random values, averaged over `random_trials`.
StudyResult run_metric_study(const RankStudy& study, const std::vector<NamedMetric>& metrics,
                             std::size_t random_trials = 1000, std::uint64_t seed = 1);

// Study file: JSON lines. One header {"ref_lo": a, "ref_hi": b} followed by
// one {"lo": c, "hi": d, "oracle_rank": k, "label": "..."} per hypothesis.
// Blank lines and lines starting with '#' are ignored.
RankStudy parse_study(std::istream& in, const std::string& source = "<study>");
RankStudy load_study(const std::string& path);
// The bundled 20-hypothesis study against [8, 12].
const RankStudy& default_study();
// Text of the bundled study file.
const std::string& default_study_text();

}  // namespace agerec
