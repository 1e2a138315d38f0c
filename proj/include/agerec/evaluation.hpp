#pragma once

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "agerec/corpus.hpp"
#include "agerec/interval_metrics.hpp"
#include "agerec/range_prediction.hpp"

namespace agerec {

inline constexpr int kAgeBuckets = 19;

struct Reference {
  std::string id;
  Genre genre = Genre::Other;
  AgeRange age;
};

// References keyed by document id, or by "doc_id:index" for sentences.
std::vector<Reference> text_references(const Corpus& corpus);
std::vector<Reference> sentence_references(const Corpus& corpus);

// Mean scores over the items of one bucket.
struct Scores {
  std::size_t count = 0;
  double mu_e = 0, theta_l2 = 0, beta_ie = 0;

  friend bool operator==(const Scores&, const Scores&) = default;
};

struct EvalReport {
  Scores overall;
  std::map<std::string, Scores> genres;    // only genres with items
  std::array<Scores, kAgeBuckets> ages{};  // integer ages 0..18
  std::map<std::string, Scores> ranges;    // keyed by "[a, b]"

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Every reference needs a prediction and every prediction a reference;
// unmatched ids throw InvalidArgument. An item with reference [a,b] counts
// in the bucket of every integer age in [a,b].
EvalReport evaluate(const std::unordered_map<std::string, RangePrediction>& predictions,
                    const std::vector<Reference>& references, const MetricConfig& config = {});

// Mean μE of aligned pairs; the statistic used by importance and ablation.
double mean_mu_e(std::span<const AgeRange> references, std::span<const RangePrediction> predictions);

}  // namespace agerec
