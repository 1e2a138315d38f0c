#pragma once

#include <Eigen/Dense>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agerec/baselines.hpp"
#include "agerec/feedforward.hpp"
#include "agerec/random_forest.hpp"
#include "agerec/range_prediction.hpp"
#include "agerec/train_config.hpp"

namespace agerec {

// Names of the input columns and their FNV-1a fingerprint. The expert
// feature schema has the same fingerprint as registry_fingerprint().
struct Schema {
  std::vector<std::string> columns;
  std::string fingerprint;

  static Schema of(std::vector<std::string> columns);
  std::size_t width() const { return columns.size(); }
};

struct ModelMetadata {
  std::uint64_t seed = 0;
  TrainConfig config;
  std::string corpus_fingerprint;
  std::size_t train_samples = 0;
};

inline constexpr int kModelFormatVersion = 1;

struct ModelArtifact {
  ModelKind kind = ModelKind::Naive;
  int version = kModelFormatVersion;
  Schema schema;
  ModelMetadata metadata;
  std::variant<NaiveModel, FeedForward, RandomForest> params;

  // Short identifier derived from the serialized parameters.
  std::string id() const;
};

// X rows align with targets. The naive model ignores X but keeps its schema.
ModelArtifact train_model(const Schema& schema, const Eigen::MatrixXd& X,
                          std::span<const AgeRange> targets, const TrainConfig& config,
                          const std::string& corpus_fingerprint = "");

// Throws SchemaMismatch naming both fingerprints when `schema` differs from
// the training schema.
RangePrediction predict(const ModelArtifact& model, const Schema& schema,
                        std::span<const double> row);
std::vector<RangePrediction> predict_batch(const ModelArtifact& model, const Schema& schema,
                                           const Eigen::MatrixXd& X);

// JSON-lines container: a header record, then one record per parameter
// block. Loading refuses other formats and versions.
void write_model(std::ostream& out, const ModelArtifact& model);
ModelArtifact read_model(std::istream& in, const std::string& source = "<model>");
void save_model(const ModelArtifact& model, const std::string& path);
ModelArtifact load_model(const std::string& path);

// Helpers for building design matrices.
Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t width);
Eigen::MatrixXd targets_matrix(std::span<const AgeRange> targets);

}  // namespace agerec
