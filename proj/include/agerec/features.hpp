#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "agerec/annotation.hpp"
#include "agerec/feature_registry.hpp"
#include "agerec/resources.hpp"

namespace agerec {

// Values aligned with feature_registry(). valid[i] is false when feature i
// could not be computed from the annotation's declared layers; such values
// are 0 at sentence level.
struct FeatureVector {
  std::vector<double> values = std::vector<double>(kFeatureCount, 0.0);
  std::vector<bool> valid = std::vector<bool>(kFeatureCount, false);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// A "word" is a token containing a letter; punctuation counts only in the
// character and punctuation ratios. Never throws: features that need an
// undeclared layer are marked invalid. A sentence without words keeps only
// the plain counts (SentenceLength, phoneme counts, tense counts).
FeatureVector extract_sentence_features(const SentenceAnnotation& annotation,
                                        const ResourceBundle& resources);

// Per-feature mean over the sentences where the feature is valid; a feature
// stays valid only if it is valid in every sentence. Throws for an empty list.
FeatureVector aggregate_text_features(std::span<const FeatureVector> sentences);

double feature_by_name(const FeatureVector& vector, std::string_view name);

}  // namespace agerec
