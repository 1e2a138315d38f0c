#include <doctest.h>

#include <atomic>
#include <chrono>
#include <future>
#include <thread>

#include "agerec/error.hpp"
#include "agerec/pipeline.hpp"
#include "agerec/service.hpp"
#include "agerec/synthetic.hpp"
#include "agerec/text.hpp"

// After Eigen: httplib pulls in system headers that clash with it otherwise.
#include <httplib.h>
#include <json.hpp>

using namespace agerec;
using json = nlohmann::json;

namespace {

// Small forest on synthetic sentences, so predictions vary with the text.
const ModelArtifact& model() {
  static const ModelArtifact m = [] {
    const auto corpus = generate_synthetic_corpus(3, 40);
    const HeuristicAnnotator ann;
    const auto feats = extract_corpus_features(corpus, ann, ResourceBundle::bundled());
    const auto ds = make_dataset(corpus, feats, Level::Sentence);
    TrainConfig c;
    c.kind = ModelKind::RandomForest;
    c.n_estimators = 5;
    c.seed = 2;
    return train_model(expert_schema(), ds.X, ds.targets, c);
  }();
  return m;
}

const Recommender& service() {
  static const Recommender r(model(), ResourceBundle::bundled(), 4096);
  return r;
}

json post(const std::string& text) {
  const auto r = service().handle("POST", "/recommend", json{{"text", text}}.dump());
  REQUIRE(r.status == 200);
  return json::parse(r.body);
}

}  // namespace

TEST_SUITE("service") {

TEST_CASE("request validation") {
  const auto& s = service();
  CHECK(s.handle("POST", "/recommend", R"({"text": ""})").status == 400);
  CHECK(s.handle("POST", "/recommend", R"({"text": "   "})").status == 400);
  CHECK(s.handle("POST", "/recommend", "{not json").status == 400);
  CHECK(s.handle("POST", "/recommend", R"({"body": "Le chat."})").status == 400);
  CHECK(s.handle("POST", "/recommend", R"({"text": 42})").status == 400);
  CHECK(s.handle("POST", "/recommend", R"(["Le chat."])").status == 400);
  CHECK(s.handle("POST", "/recommend", json{{"text", std::string(5000, 'a')}}.dump()).status == 413);
  CHECK(s.handle("GET", "/recommend", "").status == 405);
  CHECK(s.handle("POST", "/health", "").status == 405);
  CHECK(s.handle("GET", "/nowhere", "").status == 404);
  const auto err = json::parse(s.handle("GET", "/nowhere", "").body);
  CHECK(err.contains("error"));
}

TEST_CASE("a model on other inputs is refused") {
  TrainConfig naive;
  naive.kind = ModelKind::Naive;
  const Eigen::MatrixXd X = Eigen::MatrixXd::Zero(2, 2);
  const std::vector<AgeRange> y = {{4, 8}, {8, 12}};
  const auto m = train_model(Schema::of({"a", "b"}), X, y, naive);
  CHECK_THROWS_AS(Recommender(m, ResourceBundle::bundled()), SchemaMismatch);
}

TEST_CASE("single sentence: the text level is the sentence") {
  const auto r = post("Le chat dort sur le tapis.");
  REQUIRE(r["sentences"].size() == 1);
  const auto& s = r["sentences"][0];
  CHECK(s["text"] == "Le chat dort sur le tapis.");
  for (const char* k : {"lo", "hi", "mu"}) CHECK(r["text_level"][k] == s[k]);
  CHECK(s["lo"].get<double>() <= s["hi"].get<double>());
  CHECK(r["model_id"] == model().id());
}

TEST_CASE("several sentences: the text level is the mean") {
  const std::string text =
      "Le chat dort. Pendant ce temps, la bibliothèque municipale conserve des manuscrits "
      "enluminés extraordinairement fragiles. Il pleut !";
  const auto r = post(text);
  const auto split = sentence_split(text);
  REQUIRE(r["sentences"].size() == split.size());
  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < split.size(); ++i) {
    const auto& s = r["sentences"][i];
    CHECK(s["text"] == split[i]);
    lo += s["lo"].get<double>();
    hi += s["hi"].get<double>();
    const double mu = s["mu"].get<double>();
    CHECK(std::abs(mu - (s["lo"].get<double>() + s["hi"].get<double>()) / 2) <= 1e-3);
  }
  const auto n = static_cast<double>(split.size());
  CHECK(std::abs(r["text_level"]["lo"].get<double>() - lo / n) <= 1e-3);
  CHECK(std::abs(r["text_level"]["hi"].get<double>() - hi / n) <= 1e-3);
}

TEST_CASE("values are rounded to three decimals") {
  CHECK(wire_round(1.23456) == 1.235);
  CHECK(wire_round(10.0) == 10.0);
  const auto r = post("La maison est grande.");
  const double lo = r["text_level"]["lo"].get<double>();
  CHECK(std::abs(lo * 1000 - std::round(lo * 1000)) < 1e-6);
}

TEST_CASE("health and registry") {
  const auto h = json::parse(service().handle("GET", "/health", "").body);
  CHECK(h["status"] == "ok");
  CHECK(h["model_id"] == model().id());
  const auto reg = json::parse(service().handle("GET", "/registry", "").body);
  CHECK(reg["fingerprint"] == registry_fingerprint());
  CHECK(reg["features"].size() == kFeatureCount);
  CHECK(reg["features"][0]["name"] == feature_registry()[0].name);
}

TEST_CASE("live server") {
  ServiceConfig cfg;
  cfg.port = 0;
  cfg.threads = 2;
  cfg.max_body = 4096;
  std::promise<int> bound;
  std::thread server([&] { serve(service(), cfg, [&](int port) { bound.set_value(port); }); });
  const int port = bound.get_future().get();
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);

  httplib::Result health;
  for (int attempt = 0; attempt < 50 && !health; ++attempt) {
    health = client.Get("/health");
    if (!health) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

  const auto rec = client.Post("/recommend", R"({"text": "Le chat dort. Il pleut."})", "application/json");
  REQUIRE(rec);
  CHECK(rec->status == 200);
  CHECK(json::parse(rec->body)["sentences"].size() == 2);

  const auto bad = client.Post("/recommend", "{", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  const auto big = client.Post("/recommend", std::string(8000, ' '), "application/json");
  REQUIRE(big);
  CHECK(big->status == 413);
  const auto wrong = client.Get("/recommend");
  REQUIRE(wrong);
  CHECK(wrong->status == 405);

  // Concurrent requests on the shared recommender.
  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t) {
    clients.emplace_back([&] {
      httplib::Client c("127.0.0.1", port);
      for (int k = 0; k < 3; ++k) {
        const auto res = c.Post("/recommend", R"({"text": "La mer est calme."})", "application/json");
        if (res && res->status == 200) ++ok;
      }
    });
  }
  for (auto& t : clients) t.join();
  CHECK(ok == 12);

  stop_service();
  server.join();
}

}  // TEST_SUITE
