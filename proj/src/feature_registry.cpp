#include "agerec/feature_registry.hpp"

#include <cstdint>
#include <cstdio>
#include <unordered_map>

#include "agerec/annotation.hpp"
#include "agerec/error.hpp"
#include "agerec/resources.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

const std::vector<FeatureCategory>& all_categories() {
  static const std::vector<FeatureCategory> cats = {
      FeatureCategory::Lexicon,      FeatureCategory::Graphemes,    FeatureCategory::Morphosyntax,
      FeatureCategory::VerbalTenses, FeatureCategory::PersonNumber, FeatureCategory::Dependencies,
      FeatureCategory::Connectors,   FeatureCategory::Phonetics,    FeatureCategory::Sentiments};
  return cats;
}

std::string_view category_name(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::Lexicon: return "Lexicon";
    case FeatureCategory::Graphemes: return "Graphemes";
    case FeatureCategory::Morphosyntax: return "Morphosyntax";
    case FeatureCategory::VerbalTenses: return "VerbalTenses";
    case FeatureCategory::PersonNumber: return "PersonNumber";
    case FeatureCategory::Dependencies: return "Dependencies";
    case FeatureCategory::Connectors: return "Connectors";
    case FeatureCategory::Phonetics: return "Phonetics";
    case FeatureCategory::Sentiments: return "Sentiments";
  }
  return "?";
}

FeatureCategory parse_category(std::string_view name) {
  std::string key;
  for (char c : utf8::to_lower(name)) {
    if (c != '-' && c != '_' && c != ' ' && c != '/') key += c;
  }
  for (auto c : all_categories()) {
    if (utf8::to_lower(category_name(c)) == key) return c;
  }
  throw InvalidArgument("unknown feature category '" + std::string(name) + "'");
}

const std::vector<FeatureInfo>& feature_registry() {
  static const std::vector<FeatureInfo> registry = [] {
    std::vector<FeatureInfo> r;
    auto add = [&](FeatureCategory c, std::string name, std::string desc) {
      r.push_back(FeatureInfo{std::move(name), c, static_cast<int>(r.size()), std::move(desc)});
    };
    using C = FeatureCategory;
    add(C::Lexicon, "LexLogProbMean", "mean log probability of the words");
    add(C::Lexicon, "LexLogProbStd", "std of word log probabilities");
    add(C::Lexicon, "LemmaDiversity", "distinct lemmas / words");
    add(C::Lexicon, "WordFrequencyMean", "mean word frequency (per million)");
    add(C::Lexicon, "WordFrequencyStd", "std of word frequencies (per million)");

    add(C::Graphemes, "GraphConfusabilityMean", "mean graphical confusability of the words");
    add(C::Graphemes, "GraphConfusabilityStd", "std of graphical confusability");
    add(C::Graphemes, "WordLengthMean", "mean word length in characters");
    add(C::Graphemes, "WordLengthStd", "std of word length");
    add(C::Graphemes, "CharsPerWord", "characters, punctuation included, per word");
    add(C::Graphemes, "PunctuationPerWord", "punctuation marks per word");

    add(C::Morphosyntax, "VerbProportion", "verbs / words");
    add(C::Morphosyntax, "StateVerbProportion", "state verbs / words");
    add(C::Morphosyntax, "NounProportion", "nouns / words");
    add(C::Morphosyntax, "AdjectiveProportion", "adjectives / words");
    add(C::Morphosyntax, "CliticProportion", "clitic pronouns / words");
    add(C::Morphosyntax, "TemporalAdverbProportion", "temporal adverbs / words");
    add(C::Morphosyntax, "StopwordsProportion", "stop words / words");

    add(C::VerbalTenses, "TenseDiversity", "number of distinct tenses");
    for (int t = 0; t < kTenseCount; ++t) {
      const auto name = std::string(tense_name(static_cast<Tense>(t)));
      add(C::VerbalTenses, "Tense" + name, "proportion of verb groups in " + name);
    }
    add(C::VerbalTenses, "TemporalSystemCount", "number of temporal systems used");
    add(C::VerbalTenses, "SystemPast", "conjugated verbs in the past system");
    add(C::VerbalTenses, "SystemPresent", "conjugated verbs in the present system");
    add(C::VerbalTenses, "SystemFuture", "conjugated verbs in the future system");
    add(C::VerbalTenses, "CompoundTenseProportion", "compound tenses / verb groups");
    add(C::VerbalTenses, "SimpleTenseProportion", "simple tenses / verb groups");
    add(C::VerbalTenses, "ModeInfinitive", "infinitive verb groups / verb groups");
    add(C::VerbalTenses, "ModeIndicative", "indicative verb groups / verb groups");
    add(C::VerbalTenses, "ModeSubjunctive", "subjunctive verb groups / verb groups");

    add(C::PersonNumber, "Person1", "conjugated verbs in the first person");
    add(C::PersonNumber, "Person2", "conjugated verbs in the second person");
    add(C::PersonNumber, "Person3", "conjugated verbs in the third person");
    add(C::PersonNumber, "NumberSingular", "conjugated verbs in the singular");
    add(C::PersonNumber, "NumberPlural", "conjugated verbs in the plural");

    add(C::Dependencies, "SentenceLength", "number of words in the sentence");
    add(C::Dependencies, "DepDistanceMean", "mean distance between a word and its dependents");
    add(C::Dependencies, "DepDistanceMax", "maximum dependency distance");
    add(C::Dependencies, "DependentsPerWordMean", "mean number of dependents per word");
    add(C::Dependencies, "DependentsPerWordStd", "std of dependents per word");
    add(C::Dependencies, "PointedDistanceMean", "mean distance from a word to its head");
    add(C::Dependencies, "PointedDistanceStd", "std of the distance to the head");
    add(C::Dependencies, "TreeDepth", "depth of the dependency tree");

    for (const auto& c : connector_categories()) {
      add(C::Connectors, "Conn" + c, c + " connectors / words");
    }

    add(C::Phonetics, "PhonemeNumberSentence", "phonemes in the sentence");
    add(C::Phonetics, "PhonemeDiversitySentence", "distinct phonemes in the sentence");
    add(C::Phonetics, "PhonemeFrequencySentence", "mean phoneme probability over the sentence");
    add(C::Phonetics, "PhonemeOrdinarinessMean", "mean phonetic ordinariness of the words");
    add(C::Phonetics, "PhonemeOrdinarinessStd", "std of phonetic ordinariness");
    add(C::Phonetics, "PhonemeDiversityMean", "mean distinct-phoneme ratio of the words");
    add(C::Phonetics, "PhonemeDiversityStd", "std of the distinct-phoneme ratio");
    add(C::Phonetics, "PhonemeNumberAvg", "mean phonemes per word");
    add(C::Phonetics, "PhonemeNumberStd", "std of phonemes per word");

    add(C::Sentiments, "SubjectivityScore", "mean subjectivity of lexicon words [0,1]");
    add(C::Sentiments, "PolarityScore", "mean polarity of lexicon words [-1,1]");
    for (const auto& e : emotion_names()) {
      add(C::Sentiments, "Emotion" + e, e + " trigger words / words");
    }
    return r;
  }();
  return registry;
}

int feature_index(std::string_view name) {
  static const std::unordered_map<std::string, int> by_name = [] {
    std::unordered_map<std::string, int> m;
    for (const auto& f : feature_registry()) m.emplace(f.name, f.index);
    return m;
  }();
  const auto it = by_name.find(std::string(name));
  if (it == by_name.end()) throw InvalidArgument("unknown feature '" + std::string(name) + "'");
  return it->second;
}

std::vector<int> category_indices(FeatureCategory c) {
  std::vector<int> out;
  for (const auto& f : feature_registry()) {
    if (f.category == c) out.push_back(f.index);
  }
  return out;
}

std::string registry_fingerprint() {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& f : feature_registry()) {
    for (unsigned char c : f.name + "\n") {
      h ^= c;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace agerec
