#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace agerec {

// The 36 French phonemes produced by the rule phonemizer, in IPA.
const std::vector<std::string>& phoneme_inventory();

// Grapheme-to-phoneme conversion for a single word or a whole string.
class Phonemizer {
 public:
  virtual ~Phonemizer() = default;
  // Never throws; characters that are not letters separate words and
  // produce nothing.
  virtual std::vector<std::string> phonemize(std::string_view text) const = 0;
};

// Rule-table French G2P: multi-letter graphemes ("eau", "ou", "on", "ch",
// "gn", ...) before single letters, with silent final letters.
class RulePhonemizer : public Phonemizer {
 public:
  std::vector<std::string> phonemize(std::string_view text) const override;
};

// Pronunciation lexicon (for instance exported from an external G2P tool)
// with the rule phonemizer as fallback for unknown words.
// File format: word<TAB>space-separated phonemes.
class LexiconPhonemizer : public Phonemizer {
 public:
  explicit LexiconPhonemizer(std::unordered_map<std::string, std::vector<std::string>> entries);
  static LexiconPhonemizer load(const std::string& path);

  std::vector<std::string> phonemize(std::string_view text) const override;

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  RulePhonemizer fallback_;
};

std::vector<std::string> phonemize(std::string_view text);

// Number of vowel groups in a word. A final "e" or "es" following a
// consonant is silent when an earlier vowel group exists. At least 1 for
// tokens with a letter, 0 otherwise.
int syllable_count(std::string_view token);

}  // namespace agerec
