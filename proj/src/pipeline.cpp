#include "agerec/pipeline.hpp"

#include <cstdio>

#include "agerec/conllu.hpp"
#include "agerec/error.hpp"
#include "agerec/phonetics.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

std::vector<SentenceAnnotation> annotate_document(const Document& doc, const Annotator& annotator,
                                                  std::vector<std::string>* warnings) {
  std::vector<SentenceAnnotation> out;
  if (!doc.conllu_path.empty()) {
    auto result = load_conllu(doc.conllu_path);
    if (warnings) {
      for (auto& w : result.warnings) warnings->push_back(std::move(w));
    }
    static const RulePhonemizer phonemizer;
    for (auto& s : result.sentences) {
      if (!s.capabilities.has(Capability::Phoneme)) {
        add_phonemes(s, phonemizer);
        s.provenance = Provenance::Mixed;
      }
    }
    return std::move(result.sentences);
  }
  out.reserve(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    auto a = annotator.annotate_sentence(doc.sentences[i]);
    a.sent_id = doc.id + ":" + std::to_string(i);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<DocumentFeatures> extract_corpus_features(const Corpus& corpus,
                                                      const Annotator& annotator,
                                                      const ResourceBundle& resources,
                                                      std::vector<std::string>* warnings) {
  std::vector<DocumentFeatures> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    DocumentFeatures df;
    df.doc_id = doc.id;
    for (const auto& a : annotate_document(doc, annotator, warnings)) {
      df.sentences.push_back(extract_sentence_features(a, resources));
    }
    if (df.sentences.empty()) throw InvalidArgument("document '" + doc.id + "' has no sentences");
    df.text = aggregate_text_features(df.sentences);
    out.push_back(std::move(df));
  }
  return out;
}

std::string_view level_name(Level l) { return l == Level::Text ? "text" : "sentence"; }

Level parse_level(std::string_view name) {
  const auto n = utf8::to_lower(name);
  if (n == "text") return Level::Text;
  if (n == "sentence") return Level::Sentence;
  throw InvalidArgument("unknown level '" + std::string(name) + "' (text, sentence)");
}

Dataset make_dataset(const Corpus& corpus, const std::vector<DocumentFeatures>& features,
                     Level level) {
  if (features.size() != corpus.size()) {
    throw InvalidArgument("feature list does not match the corpus");
  }
  Dataset ds;
  ds.level = level;
  std::vector<const FeatureVector*> rows;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const auto& doc = corpus.documents[d];
    if (features[d].doc_id != doc.id) throw InvalidArgument("feature list is out of corpus order");
    if (level == Level::Text) {
      ds.keys.push_back(doc.id);
      ds.doc_ids.push_back(doc.id);
      ds.genres.push_back(doc.genre);
      ds.targets.push_back(doc.age);
      rows.push_back(&features[d].text);
    } else {
      for (std::size_t i = 0; i < features[d].sentences.size(); ++i) {
        ds.keys.push_back(doc.id + ":" + std::to_string(i));
        ds.doc_ids.push_back(doc.id);
        ds.genres.push_back(doc.genre);
        ds.targets.push_back(doc.age);
        rows.push_back(&features[d].sentences[i]);
      }
    }
  }
  ds.X.resize(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < kFeatureCount; ++j) ds.X(static_cast<Eigen::Index>(r), j) = rows[r]->values[j];
  }
  return ds;
}

const Schema& expert_schema() {
  static const Schema schema = [] {
    std::vector<std::string> names;
    for (const auto& f : feature_registry()) names.push_back(f.name);
    return Schema::of(std::move(names));
  }();
  return schema;
}

std::string corpus_fingerprint(const Corpus& corpus) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& d : corpus.documents) {
    mix(d.id);
    mix(to_string(d.age));
    for (const auto& s : d.sentences) mix(s);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_feature_matrix(std::ostream& out, const std::vector<std::string>& keys,
                          const std::vector<std::string>& columns, const Eigen::MatrixXd& X) {
  out << "key";
  for (const auto& c : columns) out << '\t' << c;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < keys.size(); ++r) {
    out << keys[r];
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", X(static_cast<Eigen::Index>(r), j));
      out << '\t' << buf;
    }
    out << '\n';
  }
}

}  // namespace agerec
