#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agerec/phonetics.hpp"

namespace agerec {

enum class Capability : std::uint8_t {
  Pos = 1,
  Lemma = 2,
  Feats = 4,
  Dependency = 8,
  Phoneme = 16,
};

// Set of annotation layers an annotator fills in.
class Capabilities {
 public:
  constexpr Capabilities() = default;
  constexpr Capabilities(std::initializer_list<Capability> caps) {
    for (auto c : caps) bits_ |= static_cast<std::uint8_t>(c);
  }

  constexpr bool has(Capability c) const { return (bits_ & static_cast<std::uint8_t>(c)) != 0; }
  constexpr Capabilities with(Capability c) const {
    Capabilities out = *this;
    out.bits_ |= static_cast<std::uint8_t>(c);
    return out;
  }
  constexpr Capabilities without(Capability c) const {
    Capabilities out = *this;
    out.bits_ &= static_cast<std::uint8_t>(~static_cast<std::uint8_t>(c));
    return out;
  }
  constexpr std::uint8_t bits() const { return bits_; }

  // Comma separated, e.g. "pos,lemma,feats".
  std::string to_string() const;
  static Capabilities parse(std::string_view text);

  friend constexpr bool operator==(Capabilities, Capabilities) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct Token {
  std::string form;
  std::string lemma;                         // empty without Lemma
  std::string upos;                          // empty without Pos
  std::map<std::string, std::string> feats;  // Universal Dependencies features
  int head = -1;                             // 1-based; 0 = root; -1 = none
  std::string deprel;
  std::vector<std::string> phonemes;
  std::string misc;  // MISC column content other than phonemes

  friend bool operator==(const Token&, const Token&) = default;
};

// Mixed: ingested layers completed by a built-in tool (e.g. phonemes).
enum class Provenance { Heuristic, Ingested, Mixed };

struct SentenceAnnotation {
  std::string sent_id;
  std::string text;
  std::vector<Token> tokens;
  Capabilities capabilities;
  Provenance provenance = Provenance::Heuristic;

  friend bool operator==(const SentenceAnnotation&, const SentenceAnnotation&) = default;
};

// True when heads form a single-rooted tree over the tokens.
bool is_valid_tree(const std::vector<Token>& tokens);

// Throws InvalidArgument when a layer is populated without being declared,
// or declared without being populated.
void check_contract(const SentenceAnnotation& annotation);

// Fills phonemes from `phonemizer` and declares the Phoneme capability.
void add_phonemes(SentenceAnnotation& annotation, const Phonemizer& phonemizer);

class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual Capabilities capabilities() const = 0;
  virtual SentenceAnnotation annotate(const std::vector<std::string>& tokens) const = 0;

  // Tokenizes then annotates; keeps the sentence text.
  SentenceAnnotation annotate_sentence(std::string_view sentence) const;
};

// Lexicon and suffix-rule tagger for French: closed-class lexicon,
// conjugation-suffix verb detection, naive lemmas, verb morphology. Does
// not produce dependency trees.
class HeuristicAnnotator : public Annotator {
 public:
  HeuristicAnnotator();
  explicit HeuristicAnnotator(std::shared_ptr<const Phonemizer> phonemizer);

  Capabilities capabilities() const override;
  SentenceAnnotation annotate(const std::vector<std::string>& tokens) const override;

 private:
  std::shared_ptr<const Phonemizer> phonemizer_;
};

enum class Tense {
  Present,
  PasseSimple,
  Future,
  Imperfect,
  SubjunctivePresent,
  ConditionalPresent,
  Infinitive,
  PasseCompose,
  PasseAnterieur,
  FutureAnterieur,
  PlusQueParfait,
  SubjunctivePast,
  ConditionalPast,
  InfinitivePast,
};

inline constexpr int kTenseCount = 14;
std::string_view tense_name(Tense t);
bool is_compound(Tense t);

// One verbal group: a verb with its tense-carrying auxiliary, if any.
struct VerbGroup {
  Tense tense;
  std::size_t verb_index = 0;
  std::optional<std::size_t> aux_index;
  int person = 0;  // 1..3, 0 when unknown
  int number = 0;  // 1 singular, 2 plural, 0 unknown
  bool finite() const { return tense != Tense::Infinitive && tense != Tense::InfinitivePast; }
};

// Tense analysis from UPOS + morphological features. Requires the Pos and
// Feats layers; returns nothing otherwise.
std::vector<VerbGroup> detect_verb_groups(const SentenceAnnotation& annotation);

}  // namespace agerec
