#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "agerec/error.hpp"
#include "agerec/model.hpp"
#include "gen.hpp"

using namespace agerec;

namespace {

struct Data {
  Eigen::MatrixXd X;
  std::vector<AgeRange> targets;
  Schema schema = Schema::of({"f0", "f1", "f2", "f3"});
};

Data make_data(int n, std::uint64_t seed) {
  testgen::Rng rng(seed);
  Data d;
  d.X.resize(n, 4);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 4; ++j) d.X(i, j) = rng.uniform(-3, 3);
    const double lo = 6 + d.X(i, 0) + 0.5 * d.X(i, 1);
    d.targets.push_back({lo, lo + 3 + rng.uniform(0, 1)});
  }
  return d;
}

ModelArtifact trained(ModelKind kind, const Data& d) {
  TrainConfig c;
  c.kind = kind;
  c.hidden_layers = 2;
  c.hidden_units = 5;
  c.epochs = 30;
  c.n_estimators = 4;
  c.seed = 9;
  return train_model(d.schema, d.X, d.targets, c, "fp-test");
}

std::string serialize(const ModelArtifact& m) {
  std::ostringstream out;
  write_model(out, m);
  return out.str();
}

ModelArtifact deserialize(const std::string& text) {
  std::istringstream in(text);
  return read_model(in, "mem");
}

}  // namespace

TEST_SUITE("model_artifact") {

TEST_CASE("round trip gives bit-identical predictions") {
  const auto d = make_data(40, 61);
  for (auto kind : {ModelKind::Naive, ModelKind::FeedForward, ModelKind::RandomForest}) {
    CAPTURE(model_kind_name(kind));
    const auto m = trained(kind, d);
    const auto text = serialize(m);
    const auto back = deserialize(text);
    CHECK(back.kind == kind);
    CHECK(back.schema.columns == d.schema.columns);
    CHECK(back.schema.fingerprint == d.schema.fingerprint);
    CHECK(back.metadata.seed == 9);
    CHECK(back.metadata.corpus_fingerprint == "fp-test");
    CHECK(back.metadata.train_samples == 40);
    CHECK(back.metadata.config.epochs == 30);
    CHECK(back.id() == m.id());
    CHECK(serialize(back) == text);
    CHECK(predict_batch(back, d.schema, d.X) == predict_batch(m, d.schema, d.X));
  }
}

TEST_CASE("files on disk") {
  const auto d = make_data(20, 62);
  const auto m = trained(ModelKind::RandomForest, d);
  const auto path = (std::filesystem::temp_directory_path() / "agerec_artifact_test.jsonl").string();
  save_model(m, path);
  const auto back = load_model(path);
  CHECK(predict_batch(back, d.schema, d.X) == predict_batch(m, d.schema, d.X));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_model(path), Error);
}

TEST_CASE("corrupted or foreign files are refused") {
  const auto d = make_data(20, 63);
  const auto text = serialize(trained(ModelKind::FeedForward, d));

  CHECK_THROWS_AS(deserialize(""), ParseError);
  CHECK_THROWS_AS(deserialize("{\"format\":\"something-else\",\"version\":1}\n"), ParseError);
  // Truncated: drop the last block.
  const auto cut = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  CHECK_THROWS_AS(deserialize(cut), ParseError);
  // Garbage in a block.
  std::string garbled = text;
  garbled[text.find("\"weights\"") + 12] = '#';
  CHECK_THROWS_AS(deserialize(garbled), ParseError);

  std::string future = text;
  const auto v = future.find("\"version\":1");
  REQUIRE(v != std::string::npos);
  future.replace(v, 11, "\"version\":2");
  try {
    deserialize(future);
    FAIL("a newer version was accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("version") != std::string::npos);
  }

  std::string renamed = text;
  renamed.replace(renamed.find("\"f0\""), 4, "\"g0\"");
  CHECK_THROWS_AS(deserialize(renamed), ParseError);
}

TEST_CASE("schema mismatch names both fingerprints") {
  const auto d = make_data(20, 64);
  const auto m = trained(ModelKind::Naive, d);
  const auto other = Schema::of({"f0", "f1", "f2", "zz"});
  try {
    predict_batch(m, other, d.X);
    FAIL("mismatched schema accepted");
  } catch (const SchemaMismatch& e) {
    const std::string msg = e.what();
    CHECK(msg.find(other.fingerprint) != std::string::npos);
    CHECK(msg.find(d.schema.fingerprint) != std::string::npos);
  }
}

TEST_CASE("schema fingerprint depends on names and order") {
  CHECK(Schema::of({"a", "b"}).fingerprint != Schema::of({"b", "a"}).fingerprint);
  CHECK(Schema::of({"ab"}).fingerprint != Schema::of({"a", "b"}).fingerprint);
  CHECK(Schema::of({"a", "b"}).fingerprint == Schema::of({"a", "b"}).fingerprint);
  CHECK(Schema::of({"a"}).fingerprint.size() == 16);
}

}  // TEST_SUITE
