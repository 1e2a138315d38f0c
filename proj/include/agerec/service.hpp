#pragma once

#include <memory>
#include <string>

#include "agerec/annotation.hpp"
#include "agerec/model.hpp"
#include "agerec/resources.hpp"
#include "agerec/run_config.hpp"

namespace agerec {

struct HttpResult {
  int status = 200;
  std::string body;  // JSON
};

// Request handling for the recommendation service, independent of the HTTP
// server so it can be exercised directly. All state is immutable after
// construction; handle() is safe to call concurrently.
class Recommender {
 public:
  // The model must take the expert feature vector as input.
  Recommender(ModelArtifact model, ResourceBundle resources, std::size_t max_body = 64 * 1024);

  HttpResult handle(const std::string& method, const std::string& path,
                    const std::string& body) const;

  HttpResult recommend(const std::string& body) const;
  HttpResult health() const;
  HttpResult registry() const;

  const std::string& model_id() const { return model_id_; }

 private:
  ModelArtifact model_;
  ResourceBundle resources_;
  HeuristicAnnotator annotator_;
  std::size_t max_body_;
  std::string model_id_;
};

// Runs until stop_service() or process exit. When config.port is 0 a free
// port is chosen and reported through `on_listen`.
void serve(const Recommender& recommender, const ServiceConfig& config,
           const std::function<void(int port)>& on_listen = {});
void stop_service();

// Rounds to 3 decimals, as sent on the wire.
double wire_round(double v);

}  // namespace agerec
