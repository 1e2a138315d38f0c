#include "agerec/metric_study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "agerec/error.hpp"

namespace agerec {

void RankStudy::validate() const {
  if (hypotheses.empty()) throw InvalidArgument("rank study has no hypotheses");
  if (oracle_ranks.size() != hypotheses.size()) {
    throw InvalidArgument("rank study: oracle rank count differs from hypothesis count");
  }
  if (!labels.empty() && labels.size() != hypotheses.size()) {
    throw InvalidArgument("rank study: label count differs from hypothesis count");
  }
  std::vector<bool> seen(hypotheses.size() + 1, false);
  for (double r : oracle_ranks) {
    const double k = std::round(r);
    if (k != r || k < 1 || k > static_cast<double>(hypotheses.size()) ||
        seen[static_cast<std::size_t>(k)]) {
      throw InvalidArgument("rank study: oracle ranks must be a permutation of 1..n");
    }
    seen[static_cast<std::size_t>(k)] = true;
  }
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman_footrule(std::span<const double> oracle, std::span<const double> observed) {
  if (oracle.size() != observed.size()) {
    throw InvalidArgument("spearman_footrule: rankings have different lengths");
  }
  if (oracle.empty()) throw InvalidArgument("spearman_footrule: empty rankings");
  double total = 0.0;
  for (std::size_t i = 0; i < oracle.size(); ++i) total += std::abs(oracle[i] - observed[i]);
  return total / static_cast<double>(oracle.size());
}

std::vector<double> rank_hypotheses(Metric metric, const MetricConfig& config,
                                    const RankStudy& study) {
  study.validate();
  config.validate();
  std::vector<double> values;
  values.reserve(study.hypotheses.size());
  for (const auto& h : study.hypotheses) {
    values.push_back(compute_metric(metric, config, study.reference, h));
  }
  return average_ranks(values);
}

namespace {

std::string describe(const NamedMetric& m) {
  std::ostringstream os;
  os << metric_name(m.metric);
  if (m.metric == Metric::ThetaL2) os << "(alpha=" << m.config.alpha << ")";
  if (m.metric == Metric::BetaIE) os << "(beta=" << m.config.beta << ")";
  return os.str();
}

}  // namespace

StudyResult run_metric_study(const RankStudy& study, const std::vector<NamedMetric>& metrics,
                             std::size_t random_trials, std::uint64_t seed) {
  study.validate();
  StudyResult result;
  for (const auto& m : metrics) {
    MetricScore row;
    row.name = describe(m);
    row.metric = m.metric;
    row.config = m.config;
    row.ranks = rank_hypotheses(m.metric, m.config, study);
    row.footrule = spearman_footrule(study.oracle_ranks, row.ranks);
    result.rows.push_back(std::move(row));
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const MetricScore& a, const MetricScore& b) { return a.footrule < b.footrule; });

  result.random_trials = random_trials;
  if (random_trials > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values(study.hypotheses.size());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t t = 0; t < random_trials; ++t) {
      for (auto& v : values) v = unit(rng);
      const double s = spearman_footrule(study.oracle_ranks, average_ranks(values));
      sum += s;
      sum_sq += s * s;
    }
    const double n = static_cast<double>(random_trials);
    result.random_footrule_mean = sum / n;
    result.random_footrule_std = std::sqrt(std::max(0.0, sum_sq / n - sum * sum / (n * n)));
  }
  return result;
}

RankStudy parse_study(std::istream& in, const std::string& source) {
  RankStudy study;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(source, line_no, "record is not an object");
    try {
      if (rec.contains("ref_lo")) {
        if (have_header) throw ParseError(source, line_no, "duplicate header record");
        study.reference = AgeRange::make(rec.at("ref_lo").get<double>(), rec.at("ref_hi").get<double>());
        have_header = true;
        continue;
      }
      if (!have_header) throw ParseError(source, line_no, "hypothesis before header record");
      study.hypotheses.push_back(AgeRange::make(rec.at("lo").get<double>(), rec.at("hi").get<double>()));
      study.oracle_ranks.push_back(rec.at("oracle_rank").get<double>());
      study.labels.push_back(rec.value("label", std::string{}));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, std::string("bad field: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(source + ": missing header record {ref_lo, ref_hi}");
  try {
    study.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(source + ": " + e.what());
  }
  return study;
}

RankStudy load_study(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open study file '" + path + "'");
  return parse_study(in, path);
}

const std::string& default_study_text() {
  static const std::string text = R"(# Default metric study: 20 hypotheses against the reference [8, 12].
# Oracle rationale, applied in this order:
#  1. a hypothesis nested inside the reference beats one of equal size that crosses it;
#  2. a smaller total bound displacement beats a larger one;
#  3. at equal displacement, errors toward older readers beat errors toward
#     younger ones (a text recommended too young is the costlier mistake);
#  4. any overlap beats disjointness; the uninformative whole-domain range
#     ranks with the near-disjoint hypotheses.
{"ref_lo": 8, "ref_hi": 12}
{"lo": 8, "hi": 12, "oracle_rank": 1, "label": "exact match"}
{"lo": 8.5, "hi": 11.5, "oracle_rank": 2, "label": "inner shrink 0.5y"}
{"lo": 9, "hi": 11, "oracle_rank": 3, "label": "inner shrink 1y"}
{"lo": 8.5, "hi": 12.5, "oracle_rank": 4, "label": "shift up 0.5y"}
{"lo": 7.5, "hi": 12.5, "oracle_rank": 5, "label": "outer growth 0.5y"}
{"lo": 10, "hi": 12, "oracle_rank": 6, "label": "inner shrink 2y on lower bound"}
{"lo": 9, "hi": 13, "oracle_rank": 7, "label": "shift up 1y"}
{"lo": 7, "hi": 11, "oracle_rank": 8, "label": "shift down 1y"}
{"lo": 7, "hi": 13, "oracle_rank": 9, "label": "outer growth 1y"}
{"lo": 10, "hi": 14, "oracle_rank": 10, "label": "shift up 2y"}
{"lo": 8, "hi": 15, "oracle_rank": 11, "label": "outer growth 3y on upper bound"}
{"lo": 6, "hi": 10, "oracle_rank": 12, "label": "shift down 2y"}
{"lo": 6, "hi": 14, "oracle_rank": 13, "label": "outer growth 2y"}
{"lo": 12, "hi": 14, "oracle_rank": 14, "label": "adjacent above"}
{"lo": 5, "hi": 9, "oracle_rank": 15, "label": "shift down 3y"}
{"lo": 13, "hi": 16, "oracle_rank": 16, "label": "disjoint near above"}
{"lo": 0, "hi": 18, "oracle_rank": 17, "label": "whole domain"}
{"lo": 4, "hi": 7, "oracle_rank": 18, "label": "disjoint near below"}
{"lo": 15, "hi": 18, "oracle_rank": 19, "label": "disjoint far above"}
{"lo": 1, "hi": 4, "oracle_rank": 20, "label": "disjoint far below"}
)";
  return text;
}

const RankStudy& default_study() {
  static const RankStudy study = [] {
    std::istringstream in(default_study_text());
    return parse_study(in, "<default study>");
  }();
  return study;
}

}  // namespace agerec
