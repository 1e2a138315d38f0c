#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "agerec/annotation.hpp"
#include "agerec/corpus.hpp"
#include "agerec/features.hpp"
#include "agerec/model.hpp"
#include "agerec/resources.hpp"

namespace agerec {

// Annotations for a document: from its CoNLL-U file when it names one (with
// phonemes added if the file lacks them), otherwise from `annotator` over
// the document's sentences.
std::vector<SentenceAnnotation> annotate_document(const Document& doc, const Annotator& annotator,
                                                  std::vector<std::string>* warnings = nullptr);

struct DocumentFeatures {
  std::string doc_id;
  std::vector<FeatureVector> sentences;
  FeatureVector text;
};

std::vector<DocumentFeatures> extract_corpus_features(const Corpus& corpus,
                                                      const Annotator& annotator,
                                                      const ResourceBundle& resources,
                                                      std::vector<std::string>* warnings = nullptr);

enum class Level { Text, Sentence };
std::string_view level_name(Level l);
Level parse_level(std::string_view name);

// Rows of expert features with their references. Keys are document ids at
// text level and "doc_id:index" at sentence level.
struct Dataset {
  Level level = Level::Text;
  std::vector<std::string> keys;
  std::vector<std::string> doc_ids;
  std::vector<Genre> genres;
  std::vector<AgeRange> targets;
  Eigen::MatrixXd X;
};

Dataset make_dataset(const Corpus& corpus, const std::vector<DocumentFeatures>& features,
                     Level level);

// Column names of the expert feature vector; fingerprint equals
// registry_fingerprint().
const Schema& expert_schema();

// FNV-1a over ids, ranges and sentences, 16 hex digits.
std::string corpus_fingerprint(const Corpus& corpus);

// Writes a header row of column names, then one row per key.
void write_feature_matrix(std::ostream& out, const std::vector<std::string>& keys,
                          const std::vector<std::string>& columns, const Eigen::MatrixXd& X);

}  // namespace agerec
