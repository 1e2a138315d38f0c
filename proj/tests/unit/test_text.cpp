#include <doctest.h>

#include "agerec/text.hpp"
#include "gen.hpp"

using namespace agerec;
using V = std::vector<std::string>;

TEST_SUITE("text") {

TEST_CASE("sentence split") {
  CHECK(sentence_split("Bonjour. Ça va?") == V{"Bonjour.", "Ça va?"});
  CHECK(sentence_split("M. Dupont arrive.") == V{"M. Dupont arrive."});
  CHECK(sentence_split("").empty());
  CHECK(sentence_split("   \n ").empty());
  CHECK(sentence_split("Il part. 3 amis restent!") == V{"Il part.", "3 amis restent!"});
  CHECK(sentence_split("Oh… Quelle surprise.") == V{"Oh…", "Quelle surprise."});
  // Lowercase after a period is not a boundary.
  CHECK(sentence_split("Voir p. ex. la suite.").size() == 1);
  // A paragraph break always ends a sentence.
  CHECK(sentence_split("Premier sans point\n\nSecond.") == V{"Premier sans point", "Second."});
  CHECK(sentence_split("Le Dr. Martin vient.", {"Dr."}).size() == 1);
}

TEST_CASE("tokenize") {
  CHECK(tokenize("Miam, voilà un moucheron!") == V{"Miam", ",", "voilà", "un", "moucheron", "!"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("l'ami") == V{"l'", "ami"});
  CHECK(tokenize("Qu'il vienne jusqu'ici.") == V{"Qu'", "il", "vienne", "jusqu'", "ici", "."});
  CHECK(tokenize("« Oui » dit-il.").front() == "«");
}

TEST_CASE("word and punctuation predicates") {
  CHECK(is_word("été"));
  CHECK(is_word("l'"));
  CHECK_FALSE(is_word("..."));
  CHECK(is_punctuation("!"));
  CHECK(is_punctuation("«"));
  CHECK_FALSE(is_punctuation("a!"));
}

TEST_CASE("paragraphs") {
  CHECK(split_paragraphs("a b\n\n  \nc").size() == 2);
  CHECK(split_paragraphs("").empty());
}

TEST_CASE("property: tokens concatenate back to the sentence without whitespace") {
  const V pieces = {"le", "chat", "l'", "ami", ",", "!", "?", "été", "« ", " »", "qu'", "jusqu'",
                    "3", "M.", "…", "-", "(", ")", "aujourd'hui", "Ça"};
  testgen::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const std::size_t n = rng.below(12);
    for (std::size_t k = 0; k < n; ++k) {
      s += testgen::pick(rng, pieces);
      if (rng.coin()) s += rng.coin() ? " " : "  ";
    }
    std::string compact;
    for (char c : s) {
      if (c != ' ') compact += c;
    }
    std::string joined;
    for (const auto& t : tokenize(s)) {
      CHECK_FALSE(t.empty());
      joined += t;
    }
    CHECK(joined == compact);
  }
}

TEST_CASE("property: sentence split keeps every non-space character in order") {
  const V pieces = {"Le chat dort.", "Il pleut!", "M. Dupont", "arrive", "Quoi?", "3 pommes.",
                    "etc.", "Oh…", "\n\n", "vite"};
  testgen::Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    std::string s;
    for (std::size_t k = 0, n = rng.below(8); k < n; ++k) s += testgen::pick(rng, pieces) + " ";
    auto strip = [](const std::string& x) {
      std::string o;
      for (char c : x) {
        if (!std::isspace(static_cast<unsigned char>(c))) o += c;
      }
      return o;
    };
    std::string joined;
    for (const auto& sent : sentence_split(s)) {
      CHECK_FALSE(strip(sent).empty());
      joined += sent;
    }
    CHECK(strip(joined) == strip(s));
  }
}

}
