#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "agerec/interval_metrics.hpp"

namespace agerec {

enum class Genre { Encyclopedia, Newspaper, Fiction, Other };

std::string_view genre_name(Genre g);
std::optional<Genre> parse_genre(std::string_view name);
inline constexpr std::array<Genre, 4> kAllGenres = {Genre::Encyclopedia, Genre::Newspaper,
                                                    Genre::Fiction, Genre::Other};

struct Document {
  std::string id;
  Genre genre = Genre::Other;
  AgeRange age;
  std::string text;  // raw text, paragraphs separated by blank lines
  std::vector<std::string> sentences;
  std::string source;
  std::string conllu_path;
  // Id of the text this one was segmented from; empty for originals.
  std::string origin_id;

  const std::string& origin() const { return origin_id.empty() ? id : origin_id; }
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  const Document* find(const std::string& id) const;
  std::size_t sentence_count() const;
};

struct SentenceRecord {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;
  AgeRange age;
  Genre genre = Genre::Other;

  // "doc_id:index", the key used by embedding tables and prediction files.
  std::string key() const { return doc_id + ":" + std::to_string(index); }
};

// One JSON object per line: {id, genre, age_min, age_max, text,
// sentences?, conllu_path?, source?, origin_id?}. Sentences are split from
// the text when absent. Unknown genres become "other" with a warning.
Corpus read_corpus(std::istream& in, const std::string& source,
                   std::vector<std::string>* warnings = nullptr);
Corpus load_corpus(const std::string& path, std::vector<std::string>* warnings = nullptr);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

// Documents longer than max_chars (code points) are cut on paragraph
// boundaries into pieces of about target_chars. Pieces get ids
// "<id>#1", "<id>#2", ... and remember the original id.
Corpus segment_long_documents(const Corpus& corpus, std::size_t max_chars = 10000,
                              std::size_t target_chars = 5000,
                              std::vector<std::string>* warnings = nullptr);

struct SplitSpec {
  double train = 0.683;
  double validation = 0.165;
  double test = 0.152;
  std::uint64_t seed = 1;

  void validate() const;
};

struct CorpusSplits {
  Corpus train, validation, test;
};

// Partition at original-text granularity: segments of one text always land
// in the same split. Original ids are shuffled with the seed, then each goes
// to the split furthest below its target document count.
CorpusSplits split_corpus(const Corpus& corpus, const SplitSpec& spec);

struct GenreStats {
  std::string label;
  std::size_t texts = 0;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  double avg_lo = 0, avg_hi = 0, avg_mean = 0;
};

struct CorpusStats {
  std::vector<GenreStats> genres;  // one row per genre, in kAllGenres order
  GenreStats overall;
};

CorpusStats corpus_stats(const Corpus& corpus);
// Human table (2 decimals, "--" for empty rows) or tab-separated records.
std::string render_stats(const CorpusStats& stats, bool machine = false);

struct AgeHistogram {
  static constexpr int kMaxAge = 18;
  std::array<std::size_t, kMaxAge + 1> texts{};
  std::array<std::size_t, kMaxAge + 1> sentences{};
};

// A text with range [a,b] counts for every integer age x in [a,b].
AgeHistogram age_distribution(const Corpus& corpus);

std::vector<SentenceRecord> explode_sentences(const Corpus& corpus);

}  // namespace agerec
