#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace agerec {

// The 16 logical-connector categories, in feature order.
const std::vector<std::string>& connector_categories();
// The 25 emotion classes, in feature order.
const std::vector<std::string>& emotion_names();

// External constants consumed by the expert features. Immutable once built.
struct ResourceBundle {
  // word -> natural-log probability.
  std::unordered_map<std::string, double> log_prob;
  double oov_log_prob = 0.0;  // min(log_prob) - 2
  std::unordered_set<std::string> stop_words;
  // Visual confusion between two lowercase base letters, symmetric.
  std::map<std::pair<char32_t, char32_t>, double> confusion;
  std::unordered_map<std::string, double> phoneme_prob;
  // Connector phrase (space-joined tokens, lowercase) -> category index.
  std::unordered_map<std::string, int> connectors;
  std::size_t longest_connector = 1;  // in tokens
  std::unordered_map<std::string, int> emotions;
  // word -> (polarity in [-1,1], subjectivity in [0,1])
  std::unordered_map<std::string, std::pair<double, double>> sentiment;

  std::vector<std::string> warnings;

  // Small built-in samples of every lexicon.
  static ResourceBundle bundled();

  double word_log_prob(const std::string& lower_word) const;
  double grapheme_confusion(char32_t x, char32_t y) const;
  double phoneme_probability(const std::string& phoneme) const;

  // Recomputes oov_log_prob and longest_connector after edits.
  void finalize();
};

// Reads the lexicon files found in `dir` and falls back to the bundled
// sample, with a warning, for each missing one:
//   word_logprob.tsv        word <TAB> ln p
//   stopwords.txt           one word per line
//   grapheme_confusion.tsv  letter <TAB> letter <TAB> score
//   phoneme_prob.tsv        phoneme <TAB> probability
//   connectors.tsv          phrase <TAB> category
//   emotions.tsv            word <TAB> emotion
//   sentiment.tsv           word <TAB> polarity <TAB> subjectivity
// Blank lines and lines starting with '#' are ignored.
ResourceBundle load_resources(const std::string& dir);

// Writes every lexicon of `bundle` in the format above.
void save_resources(const ResourceBundle& bundle, const std::string& dir);

}  // namespace agerec
