#pragma once

#include <span>
#include <string>
#include <vector>

#include "agerec/interval_metrics.hpp"
#include "agerec/range_prediction.hpp"

namespace agerec {

// Predicts the training mean of the lower and upper bounds for any input.
struct NaiveModel {
  double lo = 0, hi = 0;

  RangePrediction predict() const { return RangePrediction::normalize(lo, hi); }
};

NaiveModel naive_fit(std::span<const AgeRange> train);

// 0.39 * words/sentences + 11.8 * syllables/words - 15.59.
double flesch_kincaid_grade(double words, double sentences, double syllables);

// US school grade to age: grade + base_age.
double grade_to_age(double grade, double base_age = 5.5);

// Grade plus base age, as a degenerate (lo = hi) normalized range.
// Throws for zero words or sentences.
RangePrediction flesch_kincaid_age(double words, double sentences, double syllables,
                                   double base_age = 5.5);

struct ReadabilityCounts {
  std::size_t words = 0, sentences = 0, syllables = 0;
};

// Words are tokens with a letter; syllables come from syllable_count.
ReadabilityCounts readability_counts(const std::vector<std::string>& sentences);

}  // namespace agerec
