#include "agerec/service.hpp"

#include <atomic>
#include <cmath>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "agerec/error.hpp"
#include "agerec/features.hpp"
#include "agerec/pipeline.hpp"
#include "agerec/text.hpp"

namespace agerec {

using json = nlohmann::json;

double wire_round(double v) { return std::round(v * 1000.0) / 1000.0; }

namespace {

json range_json(const RangePrediction& p) {
  return {{"lo", wire_round(p.lo)}, {"hi", wire_round(p.hi)}, {"mu", wire_round(p.mu)}};
}

HttpResult error_result(int status, const std::string& reason) {
  return {status, json{{"error", reason}}.dump()};
}

}  // namespace

Recommender::Recommender(ModelArtifact model, ResourceBundle resources, std::size_t max_body)
    : model_(std::move(model)), resources_(std::move(resources)), max_body_(max_body) {
  if (model_.schema.fingerprint != expert_schema().fingerprint) {
    throw SchemaMismatch("the service needs a model trained on expert features (schema " +
                         expert_schema().fingerprint + "), got schema " +
                         model_.schema.fingerprint);
  }
  model_id_ = model_.id();
}

HttpResult Recommender::handle(const std::string& method, const std::string& path,
                               const std::string& body) const {
  if (path == "/recommend") {
    if (method != "POST") return error_result(405, "use POST");
    return recommend(body);
  }
  if (path == "/health") {
    if (method != "GET") return error_result(405, "use GET");
    return health();
  }
  if (path == "/registry") {
    if (method != "GET") return error_result(405, "use GET");
    return registry();
  }
  return error_result(404, "unknown endpoint " + path);
}

HttpResult Recommender::recommend(const std::string& body) const {
  if (body.size() > max_body_) {
    return error_result(413, "request body exceeds " + std::to_string(max_body_) + " bytes");
  }
  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error&) {
    return error_result(400, "body is not valid JSON");
  }
  if (!request.is_object() || !request.contains("text") || !request["text"].is_string()) {
    return error_result(400, "body must be an object with a string field 'text'");
  }
  const auto text = request["text"].get<std::string>();
  const auto sentences = sentence_split(text);
  if (sentences.empty()) return error_result(400, "text contains no sentence");

  Eigen::MatrixXd X(static_cast<Eigen::Index>(sentences.size()), kFeatureCount);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto fv = extract_sentence_features(annotator_.annotate_sentence(sentences[i]), resources_);
    for (int j = 0; j < kFeatureCount; ++j) X(static_cast<Eigen::Index>(i), j) = fv.values[j];
  }
  const auto predictions = predict_batch(model_, expert_schema(), X);
  json out_sentences = json::array();
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto s = range_json(predictions[i]);
    s["text"] = sentences[i];
    out_sentences.push_back(std::move(s));
  }
  json response = {{"sentences", std::move(out_sentences)},
                   {"text_level", range_json(aggregate_mean(predictions))},
                   {"model_id", model_id_}};
  return {200, response.dump()};
}

HttpResult Recommender::health() const {
  return {200, json{{"status", "ok"}, {"model_id", model_id_}}.dump()};
}

HttpResult Recommender::registry() const {
  json features = json::array();
  for (const auto& f : feature_registry()) {
    features.push_back({{"index", f.index},
                        {"name", f.name},
                        {"category", category_name(f.category)},
                        {"description", f.description}});
  }
  return {200, json{{"fingerprint", registry_fingerprint()}, {"features", features}}.dump()};
}

namespace {

std::mutex server_mutex;
httplib::Server* running_server = nullptr;

}  // namespace

void serve(const Recommender& recommender, const ServiceConfig& config,
           const std::function<void(int)>& on_listen) {
  httplib::Server server;
  const int threads = config.threads;
  server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  server.set_payload_max_length(config.max_body);
  auto route = [&recommender](const httplib::Request& req, httplib::Response& res) {
    HttpResult r;
    try {
      r = recommender.handle(req.method, req.path, req.body);
    } catch (const std::exception& e) {
      r = error_result(500, e.what());
    }
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  // Both methods are routed so the handler can answer 405 itself.
  for (const char* path : {"/recommend", "/health", "/registry"}) {
    server.Get(path, route);
    server.Post(path, route);
  }
  // Preflight and cross-origin reads for a browser panel served elsewhere.
  server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  int port = config.port;
  if (port == 0) {
    port = server.bind_to_any_port(config.host);
  } else if (!server.bind_to_port(config.host, port)) {
    throw Error("cannot listen on " + config.host + ":" + std::to_string(port));
  }
  if (port < 0) throw Error("cannot listen on " + config.host);
  {
    std::lock_guard lock(server_mutex);
    running_server = &server;
  }
  if (on_listen) on_listen(port);
  server.listen_after_bind();
  std::lock_guard lock(server_mutex);
  running_server = nullptr;
}

void stop_service() {
  std::lock_guard lock(server_mutex);
  if (running_server) running_server->stop();
}

}  // namespace agerec
