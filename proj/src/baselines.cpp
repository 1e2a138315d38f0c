#include "agerec/baselines.hpp"

#include "agerec/error.hpp"
#include "agerec/phonetics.hpp"
#include "agerec/text.hpp"

namespace agerec {

NaiveModel naive_fit(std::span<const AgeRange> train) {
  if (train.empty()) throw InvalidArgument("naive model needs at least one training range");
  NaiveModel m;
  for (const auto& r : train) {
    m.lo += r.lo;
    m.hi += r.hi;
  }
  m.lo /= static_cast<double>(train.size());
  m.hi /= static_cast<double>(train.size());
  return m;
}

double flesch_kincaid_grade(double words, double sentences, double syllables) {
  if (!(words >= 1) || !(sentences >= 1)) {
    throw InvalidArgument("Flesch-Kincaid needs at least one word and one sentence");
  }
  if (syllables < 0) throw InvalidArgument("syllable count must be non-negative");
  return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59;
}

double grade_to_age(double grade, double base_age) { return grade + base_age; }

RangePrediction flesch_kincaid_age(double words, double sentences, double syllables,
                                   double base_age) {
  const double age = grade_to_age(flesch_kincaid_grade(words, sentences, syllables), base_age);
  return RangePrediction::normalize(age, age);
}

ReadabilityCounts readability_counts(const std::vector<std::string>& sentences) {
  ReadabilityCounts c;
  for (const auto& s : sentences) {
    bool any = false;
    for (const auto& tok : tokenize(s)) {
      if (!is_word(tok)) continue;
      any = true;
      ++c.words;
      c.syllables += static_cast<std::size_t>(syllable_count(tok));
    }
    c.sentences += any ? 1 : 0;
  }
  return c;
}

}  // namespace agerec
