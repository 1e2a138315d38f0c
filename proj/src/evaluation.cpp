#include "agerec/evaluation.hpp"

#include <cmath>

#include "agerec/error.hpp"

namespace agerec {

std::vector<Reference> text_references(const Corpus& corpus) {
  std::vector<Reference> out;
  for (const auto& d : corpus.documents) out.push_back({d.id, d.genre, d.age});
  return out;
}

std::vector<Reference> sentence_references(const Corpus& corpus) {
  std::vector<Reference> out;
  for (const auto& s : explode_sentences(corpus)) out.push_back({s.key(), s.genre, s.age});
  return out;
}

namespace {

struct Sums {
  std::size_t n = 0;
  double mu = 0, theta = 0, beta = 0;

  void add(double m, double t, double b) {
    ++n;
    mu += m;
    theta += t;
    beta += b;
  }
  Scores mean() const {
    if (n == 0) return {};
    const double k = static_cast<double>(n);
    return {n, mu / k, theta / k, beta / k};
  }
};

}  // namespace

EvalReport evaluate(const std::unordered_map<std::string, RangePrediction>& predictions,
                    const std::vector<Reference>& references, const MetricConfig& config) {
  config.validate();
  Sums overall;
  std::map<std::string, Sums> genres, ranges;
  std::array<Sums, kAgeBuckets> ages{};
  for (const auto& ref : references) {
    const auto it = predictions.find(ref.id);
    if (it == predictions.end()) throw InvalidArgument("no prediction for '" + ref.id + "'");
    const AgeRange h = it->second.range();
    const double m = mu_e(ref.age, h);
    const double t = theta_l2(ref.age, h, config.alpha);
    const double b = beta_ie(ref.age, h, config.beta);
    overall.add(m, t, b);
    genres[std::string(genre_name(ref.genre))].add(m, t, b);
    ranges[to_string(ref.age)].add(m, t, b);
    const int first = std::max(0, static_cast<int>(std::ceil(ref.age.lo)));
    const int last = std::min(kAgeBuckets - 1, static_cast<int>(std::floor(ref.age.hi)));
    for (int x = first; x <= last; ++x) ages[x].add(m, t, b);
  }
  if (predictions.size() > overall.n) {
    throw InvalidArgument(std::to_string(predictions.size() - overall.n) +
                          " predictions have no reference");
  }
  EvalReport report;
  report.overall = overall.mean();
  for (const auto& [k, s] : genres) report.genres[k] = s.mean();
  for (const auto& [k, s] : ranges) report.ranges[k] = s.mean();
  for (int x = 0; x < kAgeBuckets; ++x) report.ages[x] = ages[x].mean();
  return report;
}

double mean_mu_e(std::span<const AgeRange> references,
                 std::span<const RangePrediction> predictions) {
  if (references.size() != predictions.size() || references.empty()) {
    throw InvalidArgument("need equally many non-zero references and predictions");
  }
  double sum = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    sum += mu_e(references[i], predictions[i].range());
  }
  return sum / static_cast<double>(references.size());
}

}  // namespace agerec
