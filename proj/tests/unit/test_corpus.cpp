#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "agerec/corpus.hpp"
#include "agerec/error.hpp"
#include "agerec/synthetic.hpp"
#include "agerec/text.hpp"
#include "agerec/utf8.hpp"
#include "gen.hpp"

using namespace agerec;

namespace {

Corpus parse(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return read_corpus(in, "test.jsonl", warnings);
}

Document doc(const std::string& id, AgeRange age, std::vector<std::string> sentences,
             Genre g = Genre::Fiction) {
  Document d;
  d.id = id;
  d.age = age;
  d.genre = g;
  d.sentences = std::move(sentences);
  for (const auto& s : d.sentences) d.text += (d.text.empty() ? "" : " ") + s;
  return d;
}

// Paragraphs of `n` code points each ("Aaaa...a." style sentences).
std::string paragraphs(std::size_t count, std::size_t n) {
  std::string out;
  for (std::size_t p = 0; p < count; ++p) {
    if (p) out += "\n\n";
    std::string para;
    while (utf8::length(para) + 6 < n) para += "Mot a ";
    para.resize(n - 1, 'a');
    out += para + ".";
  }
  return out;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("load a small corpus") {
  const auto c = parse(
      R"({"id": "a", "genre": "fiction", "age_min": 4, "age_max": 8, "text": "Le chat dort. Il rêve."}
{"id": "b", "genre": "newspaper", "age_min": 8, "age_max": 12, "text": "Un texte.", "sentences": ["Un texte."]}
{"id": "c", "genre": "encyclopedia", "age_min": 10, "age_max": 14, "text": "Encore."}
)");
  REQUIRE(c.size() == 3);
  CHECK(c.documents[0].sentences.size() == 2);
  CHECK(c.documents[1].genre == Genre::Newspaper);
  CHECK(c.find("c")->age == AgeRange{10, 14});
  CHECK(c.find("zzz") == nullptr);
  CHECK(c.sentence_count() == 4);
}

TEST_CASE("ingest errors and warnings") {
  try {
    parse(R"({"id": "bad", "genre": "fiction", "age_min": 12, "age_max": 8, "text": "x."})");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
  CHECK_THROWS(parse("{\"id\": \"a\", \"age_min\": 1, \"age_max\": 2, \"text\": \"x.\"}\n"
                     "{\"id\": \"a\", \"age_min\": 1, \"age_max\": 2, \"text\": \"y.\"}\n"));
  try {
    parse("{\"id\": \"a\", \"age_min\": 1, \"age_max\": 2, \"text\": \"x.\"}\n{broken\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::vector<std::string> warnings;
  const auto c = parse(R"({"id": "m", "age_min": 1, "age_max": 2, "text": "x."}
{"id": "n", "genre": "poetry", "age_min": 1, "age_max": 2, "text": "y."})",
                       &warnings);
  CHECK(c.documents[0].genre == Genre::Other);
  CHECK(c.documents[1].genre == Genre::Other);
  CHECK(warnings.size() == 2);
}

TEST_CASE("write then read round-trips") {
  Corpus c;
  c.documents.push_back(doc("x", {3, 5}, {"Un.", "Deux."}));
  c.documents.back().origin_id = "orig";
  c.documents.back().source = "somewhere";
  std::stringstream buf;
  write_corpus(buf, c);
  const auto back = read_corpus(buf, "buf");
  REQUIRE(back.size() == 1);
  CHECK(back.documents[0].sentences == c.documents[0].sentences);
  CHECK(back.documents[0].origin() == "orig");
  CHECK(back.documents[0].source == "somewhere");
}

TEST_CASE("segmentation") {
  Corpus c;
  Document small;
  small.id = "small";
  small.age = {4, 8};
  small.text = paragraphs(2, 2000);
  small.sentences = {"x."};
  c.documents.push_back(small);
  Document big = small;
  big.id = "big";
  big.text = paragraphs(5, 2400);  // about 12,000 code points
  c.documents.push_back(big);
  Document blob = small;
  blob.id = "blob";
  blob.text = paragraphs(1, 12000);
  c.documents.push_back(blob);

  std::vector<std::string> warnings;
  const auto out = segment_long_documents(c, 10000, 5000, &warnings);
  CHECK(out.find("small") != nullptr);
  CHECK(out.find("blob") != nullptr);
  CHECK(warnings.size() == 1);
  std::size_t pieces = 0;
  for (const auto& d : out.documents) {
    if (d.origin() != "big") continue;
    ++pieces;
    CHECK(d.age == big.age);
    CHECK(d.id.rfind("big#", 0) == 0);
    CHECK(utf8::length(d.text) <= 10000);
    CHECK(utf8::length(d.text) >= 4000);
  }
  CHECK(pieces == 2);
}

TEST_CASE("split examples") {
  Corpus c;
  for (int i = 0; i < 10; ++i) c.documents.push_back(doc("d" + std::to_string(i), {4, 8}, {"x."}));
  const auto s = split_corpus(c, SplitSpec{0.6, 0.2, 0.2, 7});
  CHECK(s.train.size() == 6);
  CHECK(s.validation.size() == 2);
  CHECK(s.test.size() == 2);
  const auto again = split_corpus(c, SplitSpec{0.6, 0.2, 0.2, 7});
  for (std::size_t i = 0; i < s.train.size(); ++i) CHECK(s.train.documents[i].id == again.train.documents[i].id);
  CHECK_THROWS_AS((SplitSpec{0.5, 0.2, 0.2, 1}.validate()), InvalidArgument);
  CHECK_THROWS_AS((SplitSpec{1.0, 0.0, 0.0, 1}.validate()), InvalidArgument);
  Corpus tiny;
  tiny.documents.push_back(doc("only", {4, 8}, {"x."}));
  CHECK_THROWS(split_corpus(tiny, SplitSpec{}));
}

TEST_CASE("stats and histogram") {
  Corpus one;
  one.documents.push_back(doc("a", {4, 8}, {"Le chat dort.", "Il rêve."}));
  auto st = corpus_stats(one);
  CHECK(st.overall.avg_lo == 4.0);
  CHECK(st.overall.avg_hi == 8.0);
  CHECK(st.overall.avg_mean == 6.0);
  CHECK(st.overall.sentences == 2);

  Corpus two = one;
  two.documents.push_back(doc("b", {8, 12}, {"Encore."}, Genre::Newspaper));
  st = corpus_stats(two);
  CHECK(st.overall.avg_lo == 6.0);
  CHECK(st.overall.avg_hi == 10.0);
  CHECK(st.overall.avg_mean == 8.0);
  const auto table = render_stats(st);
  CHECK(table.find("--") != std::string::npos);  // empty genres
  CHECK(table.find("encyclopedia") != std::string::npos);

  Corpus h;
  h.documents.push_back(doc("p", {4, 6}, {"a.", "b."}));
  h.documents.push_back(doc("q", {5, 8}, {"c."}));
  const auto hist = age_distribution(h);
  CHECK(hist.texts[4] == 1);
  CHECK(hist.texts[5] == 2);
  CHECK(hist.texts[8] == 1);
  CHECK(hist.sentences[5] == 3);
  const auto none = age_distribution(Corpus{});
  for (auto n : none.texts) CHECK(n == 0);
}

TEST_CASE("explode sentences") {
  Corpus c;
  c.documents.push_back(doc("a", {4, 8}, {"Un.", "Deux.", "Trois."}));
  const auto recs = explode_sentences(c);
  REQUIRE(recs.size() == 3);
  CHECK(recs[2].key() == "a:2");
  CHECK(recs[1].age == AgeRange{4, 8});
  CHECK(explode_sentences(Corpus{}).empty());
}

TEST_CASE("property: split is a partition at origin granularity") {
  testgen::Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus c;
    const std::size_t origins = 3 + rng.below(40);
    for (std::size_t o = 0; o < origins; ++o) {
      const std::size_t segs = 1 + rng.below(3);
      for (std::size_t k = 0; k < segs; ++k) {
        auto d = doc("o" + std::to_string(o) + (segs > 1 ? "#" + std::to_string(k + 1) : ""), {4, 8}, {"x."});
        if (segs > 1) d.origin_id = "o" + std::to_string(o);
        c.documents.push_back(std::move(d));
      }
    }
    const auto s = split_corpus(c, SplitSpec{0.683, 0.165, 0.152, rng.next()});
    std::map<std::string, std::set<int>> where;
    std::size_t total = 0;
    int part = 0;
    for (const Corpus* p : {&s.train, &s.validation, &s.test}) {
      CHECK_FALSE(p->empty());
      for (const auto& d : p->documents) where[d.origin()].insert(part);
      total += p->size();
      ++part;
    }
    CHECK(total == c.size());
    CHECK(where.size() == origins);
    for (const auto& [origin, parts] : where) CHECK(parts.size() == 1);
  }
}

TEST_CASE("property: segmentation keeps sentences and characters") {
  testgen::Rng rng(72);
  for (int trial = 0; trial < 30; ++trial) {
    Corpus c;
    Document d;
    d.id = "t";
    d.age = {5, 9};
    const std::size_t paras = 1 + rng.below(8);
    for (std::size_t p = 0; p < paras; ++p) {
      if (p) d.text += "\n\n";
      d.text += paragraphs(1, 500 + rng.below(4000));
    }
    d.sentences = sentence_split(d.text);
    c.documents.push_back(d);
    const auto out = segment_long_documents(c);
    std::size_t chars = 0;
    std::vector<std::string> sentences;
    for (const auto& s : out.documents) {
      for (char ch : s.text) chars += (ch != '\n');
      sentences.insert(sentences.end(), s.sentences.begin(), s.sentences.end());
    }
    std::size_t expected = 0;
    for (char ch : d.text) expected += (ch != '\n');
    CHECK(chars == expected);
    CHECK(sentences == d.sentences);
  }
}

TEST_CASE("property: histogram totals and explode inverse") {
  const auto c = generate_synthetic_corpus(73, 60);
  const auto hist = age_distribution(c);
  std::size_t texts = 0;
  for (auto n : hist.texts) texts += n;
  CHECK(texts >= c.size());
  const auto recs = explode_sentences(c);
  std::map<std::string, std::vector<std::string>> rebuilt;
  for (const auto& r : recs) {
    CHECK(r.age == c.find(r.doc_id)->age);
    CHECK(rebuilt[r.doc_id].size() == r.index);
    rebuilt[r.doc_id].push_back(r.text);
  }
  for (const auto& d : c.documents) CHECK(rebuilt[d.id] == d.sentences);
}

}
