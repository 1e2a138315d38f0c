#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "agerec/resources.hpp"

using namespace agerec;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("agerec_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("resources") {

TEST_CASE("bundled lexicons") {
  const auto r = ResourceBundle::bundled();
  CHECK(r.stop_words.size() == 114);
  CHECK(connector_categories().size() == 16);
  CHECK(emotion_names().size() == 25);
  CHECK_FALSE(r.warnings.empty());
  double min_lp = 0;
  for (const auto& [w, lp] : r.log_prob) min_lp = std::min(min_lp, lp);
  CHECK(r.oov_log_prob == doctest::Approx(min_lp - 2));
  CHECK(r.word_log_prob("zzzqqq") == r.oov_log_prob);
  CHECK(r.word_log_prob("de") > r.word_log_prob("photosynthèse"));
  // Confusion ignores accents and order.
  CHECK(r.grapheme_confusion(U'b', U'd') == r.grapheme_confusion(U'd', U'b'));
  CHECK(r.grapheme_confusion(U'b', U'd') > 0);
  CHECK(r.grapheme_confusion(U'é', U'c') == r.grapheme_confusion(U'e', U'c'));
  CHECK(r.phoneme_probability("a") > 0);
  for (const auto& [phrase, cat] : r.connectors) {
    CHECK(cat >= 0);
    CHECK(cat < 16);
  }
  for (const auto& [w, ps] : r.sentiment) {
    CHECK(ps.first >= -1);
    CHECK(ps.first <= 1);
    CHECK(ps.second >= 0);
    CHECK(ps.second <= 1);
  }
}

TEST_CASE("save and load round-trip") {
  const auto dir = scratch_dir("resources_rt");
  const auto r = ResourceBundle::bundled();
  save_resources(r, dir.string());
  const auto back = load_resources(dir.string());
  CHECK(back.log_prob == r.log_prob);
  CHECK(back.stop_words == r.stop_words);
  CHECK(back.confusion == r.confusion);
  CHECK(back.connectors == r.connectors);
  CHECK(back.emotions == r.emotions);
  CHECK(back.sentiment == r.sentiment);
  CHECK(back.oov_log_prob == r.oov_log_prob);
  fs::remove_all(dir);
}

TEST_CASE("missing files fall back with a warning each") {
  const auto dir = scratch_dir("resources_partial");
  {
    std::ofstream out(dir / "stopwords.txt");
    out << "# tiny\nle\nla\n";
  }
  const auto r = load_resources(dir.string());
  CHECK(r.stop_words.size() == 2);
  const auto mentions = [&](const std::string& file) {
    return std::any_of(r.warnings.begin(), r.warnings.end(),
                       [&](const std::string& w) { return w.find(file) != std::string::npos; });
  };
  CHECK(mentions("word_logprob.tsv"));
  CHECK_FALSE(mentions("stopwords.txt"));
  fs::remove_all(dir);
}

}
