#include "agerec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "agerec/error.hpp"
#include "agerec/text.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

using json = nlohmann::json;

std::string_view genre_name(Genre g) {
  switch (g) {
    case Genre::Encyclopedia: return "encyclopedia";
    case Genre::Newspaper: return "newspaper";
    case Genre::Fiction: return "fiction";
    case Genre::Other: return "other";
  }
  return "other";
}

std::optional<Genre> parse_genre(std::string_view name) {
  const std::string lower = utf8::to_lower(name);
  for (Genre g : kAllGenres) {
    if (lower == genre_name(g)) return g;
  }
  return std::nullopt;
}

const Document* Corpus::find(const std::string& id) const {
  for (const auto& d : documents) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.sentences.size();
  return n;
}

namespace {

double number_field(const json& rec, const char* key, const std::string& where) {
  if (!rec.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  const auto& v = rec.at(key);
  if (!v.is_number()) throw ParseError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string string_field(const json& rec, const char* key) {
  if (!rec.contains(key) || rec.at(key).is_null()) return "";
  if (!rec.at(key).is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return rec.at(key).get<std::string>();
}

}  // namespace

Corpus read_corpus(std::istream& in, const std::string& source, std::vector<std::string>* warnings) {
  Corpus corpus;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  auto warn = [&](const std::string& w) {
    if (warnings) warnings->push_back(w);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
    Document doc;
    const std::string where = source + ":" + std::to_string(line_no);
    try {
      doc.id = string_field(rec, "id");
      if (doc.id.empty()) throw ParseError("missing field 'id'");
      const double lo = number_field(rec, "age_min", where);
      const double hi = number_field(rec, "age_max", where);
      if (!(lo <= hi)) {
        throw InvalidArgument(where + ": document '" + doc.id + "' has age_min " +
                              std::to_string(lo) + " > age_max " + std::to_string(hi));
      }
      doc.age = AgeRange::make(lo, hi);
      const std::string genre = string_field(rec, "genre");
      if (auto g = parse_genre(genre)) {
        doc.genre = *g;
      } else {
        warn(where + ": document '" + doc.id + "' has " +
             (genre.empty() ? std::string("no genre") : "unknown genre '" + genre + "'") +
             "; using 'other'");
      }
      doc.text = string_field(rec, "text");
      doc.source = string_field(rec, "source");
      doc.conllu_path = string_field(rec, "conllu_path");
      doc.origin_id = string_field(rec, "origin_id");
      if (rec.contains("sentences")) {
        if (!rec["sentences"].is_array()) throw ParseError("field 'sentences' must be an array");
        for (const auto& s : rec["sentences"]) {
          if (!s.is_string()) throw ParseError("sentences must be strings");
          doc.sentences.push_back(s.get<std::string>());
        }
      }
    } catch (const ParseError& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (doc.sentences.empty()) doc.sentences = sentence_split(doc.text);
    if (doc.text.empty()) {
      for (const auto& s : doc.sentences) doc.text += (doc.text.empty() ? "" : " ") + s;
    }
    if (doc.sentences.empty() && doc.conllu_path.empty()) {
      throw ParseError(source, line_no, "document '" + doc.id + "' has no text");
    }
    if (!ids.insert(doc.id).second) {
      throw InvalidArgument(where + ": duplicate document id '" + doc.id + "'");
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus '" + path + "'");
  return read_corpus(in, path, warnings);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& d : corpus.documents) {
    json rec = {{"id", d.id},
                {"genre", genre_name(d.genre)},
                {"age_min", d.age.lo},
                {"age_max", d.age.hi},
                {"text", d.text},
                {"sentences", d.sentences}};
    if (!d.source.empty()) rec["source"] = d.source;
    if (!d.conllu_path.empty()) rec["conllu_path"] = d.conllu_path;
    if (!d.origin_id.empty()) rec["origin_id"] = d.origin_id;
    out << rec.dump() << '\n';
  }
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus '" + path + "'");
  write_corpus(out, corpus);
}

Corpus segment_long_documents(const Corpus& corpus, std::size_t max_chars,
                              std::size_t target_chars, std::vector<std::string>* warnings) {
  if (target_chars == 0 || target_chars > max_chars) {
    throw InvalidArgument("segmentation needs 0 < target_chars <= max_chars");
  }
  Corpus out;
  for (const auto& doc : corpus.documents) {
    if (utf8::length(doc.text) <= max_chars) {
      out.documents.push_back(doc);
      continue;
    }
    const auto paragraphs = split_paragraphs(doc.text);
    if (paragraphs.size() < 2) {
      if (warnings) {
        warnings->push_back("document '" + doc.id + "' exceeds " + std::to_string(max_chars) +
                            " characters but has no paragraph break; kept whole");
      }
      out.documents.push_back(doc);
      continue;
    }
    // Greedy packing: close a piece once it reaches the target, or before a
    // paragraph would push it past the maximum.
    std::vector<std::vector<std::string>> pieces(1);
    std::size_t size = 0;
    for (const auto& p : paragraphs) {
      const std::size_t len = utf8::length(p);
      if (!pieces.back().empty() && size + len > max_chars) {
        pieces.emplace_back();
        size = 0;
      }
      pieces.back().push_back(p);
      size += len;
      if (size >= target_chars) {
        pieces.emplace_back();
        size = 0;
      }
    }
    if (pieces.back().empty()) pieces.pop_back();
    if (pieces.size() == 1) {
      out.documents.push_back(doc);
      continue;
    }
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      Document seg = doc;
      seg.id = doc.id + "#" + std::to_string(k + 1);
      seg.origin_id = doc.origin();
      seg.text.clear();
      for (const auto& p : pieces[k]) seg.text += (seg.text.empty() ? "" : "\n\n") + p;
      seg.sentences = sentence_split(seg.text);
      seg.conllu_path.clear();
      out.documents.push_back(std::move(seg));
    }
  }
  return out;
}

void SplitSpec::validate() const {
  for (double f : {train, validation, test}) {
    if (!(f > 0.0 && f < 1.0)) throw InvalidArgument("split fractions must lie in (0,1)");
  }
  if (std::abs(train + validation + test - 1.0) > 1e-9) {
    throw InvalidArgument("split fractions must sum to 1");
  }
}

CorpusSplits split_corpus(const Corpus& corpus, const SplitSpec& spec) {
  spec.validate();
  std::vector<std::string> origins;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& o = corpus.documents[i].origin();
    if (!members.count(o)) origins.push_back(o);
    members[o].push_back(i);
  }
  if (origins.size() < 3) {
    throw InvalidArgument("corpus too small to split: " + std::to_string(origins.size()) +
                          " original text(s), need at least 3");
  }
  std::mt19937_64 rng(spec.seed);
  std::shuffle(origins.begin(), origins.end(), rng);

  const double n = static_cast<double>(corpus.documents.size());
  const std::array<double, 3> target = {spec.train * n, spec.validation * n, spec.test * n};
  std::array<double, 3> filled{};
  std::array<std::vector<std::string>, 3> assigned;
  for (const auto& o : origins) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (target[k] - filled[k] > target[best] - filled[best] + 1e-12) best = k;
    }
    assigned[best].push_back(o);
    filled[best] += static_cast<double>(members[o].size());
  }
  // Large origins can starve a split. Move the smallest origin of the split
  // furthest above its target into each empty one.
  for (std::size_t k = 0; k < 3; ++k) {
    if (!assigned[k].empty()) continue;
    std::optional<std::size_t> donor;
    for (std::size_t j = 0; j < 3; ++j) {
      if (assigned[j].size() < 2) continue;
      if (!donor || filled[j] - target[j] > filled[*donor] - target[*donor]) donor = j;
    }
    if (!donor) throw InvalidArgument("corpus too small to populate every split");
    auto& from = assigned[*donor];
    const auto smallest = std::min_element(from.begin(), from.end(), [&](const auto& a, const auto& b) {
      return members[a].size() < members[b].size();
    });
    const double moved = static_cast<double>(members[*smallest].size());
    assigned[k].push_back(*smallest);
    filled[k] += moved;
    filled[*donor] -= moved;
    from.erase(smallest);
  }
  // Keep corpus order inside each split.
  std::map<std::string, int> where;
  for (int k = 0; k < 3; ++k) {
    for (const auto& o : assigned[k]) where[o] = k;
  }
  CorpusSplits out;
  Corpus* dest[3] = {&out.train, &out.validation, &out.test};
  for (const auto& d : corpus.documents) dest[where[d.origin()]]->documents.push_back(d);
  return out;
}

namespace {

void accumulate(GenreStats& s, const Document& d) {
  s.texts += 1;
  s.sentences += d.sentences.size();
  for (const auto& sent : d.sentences) s.tokens += tokenize(sent).size();
  s.avg_lo += d.age.lo;
  s.avg_hi += d.age.hi;
  s.avg_mean += d.age.mean();
}

void finalize(GenreStats& s) {
  if (s.texts == 0) return;
  const double n = static_cast<double>(s.texts);
  s.avg_lo /= n;
  s.avg_hi /= n;
  s.avg_mean /= n;
}

}  // namespace

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  for (Genre g : kAllGenres) stats.genres.push_back(GenreStats{std::string(genre_name(g))});
  stats.overall.label = "overall";
  for (const auto& d : corpus.documents) {
    accumulate(stats.genres[static_cast<std::size_t>(d.genre)], d);
    accumulate(stats.overall, d);
  }
  for (auto& g : stats.genres) finalize(g);
  finalize(stats.overall);
  return stats;
}

std::string render_stats(const CorpusStats& stats, bool machine) {
  std::ostringstream out;
  auto rows = stats.genres;
  rows.push_back(stats.overall);
  if (machine) {
    out << "genre\ttexts\tsentences\ttokens\tavg_lo\tavg_hi\tavg_mean\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
      out << r.label << '\t' << r.texts << '\t' << r.sentences << '\t' << r.tokens << '\t';
      if (r.texts == 0) {
        out << "\t\t\n";
      } else {
        out << r.avg_lo << '\t' << r.avg_hi << '\t' << r.avg_mean << '\n';
      }
    }
    return out.str();
  }
  out << std::left << std::setw(14) << "genre" << std::right << std::setw(8) << "texts"
      << std::setw(11) << "sentences" << std::setw(10) << "tokens" << std::setw(18) << "avg range"
      << std::setw(10) << "avg mean" << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto& r : rows) {
    out << std::left << std::setw(14) << r.label << std::right;
    if (r.texts == 0) {
      out << std::setw(8) << "--" << std::setw(11) << "--" << std::setw(10) << "--"
          << std::setw(18) << "--" << std::setw(10) << "--" << '\n';
      continue;
    }
    std::ostringstream range;
    range << std::fixed << std::setprecision(2) << '[' << r.avg_lo << ", " << r.avg_hi << ']';
    out << std::setw(8) << r.texts << std::setw(11) << r.sentences << std::setw(10) << r.tokens
        << std::setw(18) << range.str() << std::setw(10) << r.avg_mean << '\n';
  }
  return out.str();
}

AgeHistogram age_distribution(const Corpus& corpus) {
  AgeHistogram h;
  for (const auto& d : corpus.documents) {
    const int from = std::max(0, static_cast<int>(std::ceil(d.age.lo)));
    const int to = std::min(AgeHistogram::kMaxAge, static_cast<int>(std::floor(d.age.hi)));
    for (int x = from; x <= to; ++x) {
      h.texts[static_cast<std::size_t>(x)] += 1;
      h.sentences[static_cast<std::size_t>(x)] += d.sentences.size();
    }
  }
  return h;
}

std::vector<SentenceRecord> explode_sentences(const Corpus& corpus) {
  std::vector<SentenceRecord> out;
  for (const auto& d : corpus.documents) {
    for (std::size_t i = 0; i < d.sentences.size(); ++i) {
      out.push_back(SentenceRecord{d.id, i, d.sentences[i], d.age, d.genre});
    }
  }
  return out;
}

}  // namespace agerec
