#include <doctest.h>

#include <sstream>

#include "agerec/error.hpp"
#include "agerec/report.hpp"
#include "gen.hpp"

using namespace agerec;

namespace {

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

EvalReport random_report(testgen::Rng& rng) {
  std::vector<Reference> refs;
  std::unordered_map<std::string, RangePrediction> preds;
  const Genre genres[] = {Genre::Encyclopedia, Genre::Newspaper, Genre::Fiction, Genre::Other};
  for (std::size_t i = 0, n = 1 + rng.below(25); i < n; ++i) {
    const auto [r, h] = testgen::range_pair(rng, testgen::layout_for(i));
    const auto id = "x" + std::to_string(i);
    refs.push_back({id, genres[rng.below(4)], r});
    preds.emplace(id, RangePrediction::normalize(h.lo, h.hi));
  }
  return evaluate(preds, refs);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("fixed two decimals") {
  CHECK(fixed2(1.833) == "1.83");
  CHECK(fixed2(2.0) == "2.00");
  CHECK(fixed2(-0.001) == "0.00");
  CHECK(fixed2(-1.5) == "-1.50");
  CHECK(parse_format("TSV") == Format::Machine);
  CHECK(parse_format("human") == Format::Human);
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}

TEST_CASE("empty report") {
  const EvalReport empty;
  CHECK(lines(render_report(empty, Format::Human)) == 1);
  const auto machine = render_report(empty, Format::Machine);
  CHECK(lines(machine) == 1);
  CHECK(parse_report(machine) == empty);
}

TEST_CASE("human report") {
  const std::vector<Reference> refs = {{"a", Genre::Fiction, {8, 12}}};
  const auto rep = evaluate({{"a", RangePrediction::normalize(6, 10)}}, refs);
  const auto text = render_report(rep, Format::Human);
  CHECK(text.find("2.00") != std::string::npos);
  CHECK(text.find("fiction") != std::string::npos);
  CHECK(text.find("newspaper") == std::string::npos);
  // Header, overall, one genre, five ages, one range.
  CHECK(lines(text) == 9);
}

TEST_CASE("malformed machine text") {
  CHECK_THROWS_AS(parse_report("nope\n"), ParseError);
  const std::string header = "section\tbucket\tcount\tmu_e\ttheta_l2\tbeta_ie\n";
  CHECK_THROWS_AS(parse_report(header + "overall\tall\t3\t1.0\t2.0\n"), ParseError);
  CHECK_THROWS_AS(parse_report(header + "overall\tall\tthree\t1\t2\t3\n"), ParseError);
  CHECK_THROWS_AS(parse_report(header + "age\t40\t1\t1\t2\t3\n"), ParseError);
  CHECK_THROWS_AS(parse_report(header + "planet\tmars\t1\t1\t2\t3\n"), ParseError);
}

TEST_CASE("property: machine report round trip") {
  testgen::Rng rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rep = random_report(rng);
    CHECK(parse_report(render_report(rep, Format::Machine)) == rep);
  }
}

TEST_CASE("rank tables") {
  FeatureRankTable t{"correlation+", {{"SentenceLength", 0.8125, 1}, {"WordLengthMean", 1.0 / 3, 2}}};
  const auto machine = render_table(t, Format::Machine);
  CHECK(parse_table(machine) == t);
  const auto human = render_table(t, Format::Human);
  CHECK(human.find("0.81") != std::string::npos);
  CHECK(human.find("# correlation+") == 0);
  CHECK_THROWS_AS(parse_table(machine + "permutation\t3\tX\t0.1\n"), ParseError);
  CHECK(parse_table(render_table(FeatureRankTable{"permutation", {}}, Format::Machine)).rows.empty());
}

TEST_CASE("prediction files") {
  std::vector<PredictionRecord> recs = {{"doc-1", RangePrediction::normalize(6, 10)},
                                        {"doc-2:3", RangePrediction::normalize(20, 1.0 / 3)}};
  std::stringstream io;
  write_predictions(io, recs);
  const auto back = read_predictions(io);
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "doc-1");
  CHECK(back[0].prediction == recs[0].prediction);
  CHECK(back[1].prediction == recs[1].prediction);
  CHECK(back[1].prediction.normalized);

  std::istringstream bad("id\tlo\thi\tmu\tnormalized\nx\t9\t3\t6\t0\n");
  CHECK_THROWS_AS(read_predictions(bad), ParseError);
  std::istringstream flag("id\tlo\thi\tmu\tnormalized\nx\t3\t9\t6\tyes\n");
  CHECK_THROWS_AS(read_predictions(flag), ParseError);
}

}  // TEST_SUITE
