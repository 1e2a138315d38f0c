#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace agerec {

enum class ModelKind { Naive, FeedForward, RandomForest };

std::string_view model_kind_name(ModelKind k);  // "naive", "ff", "rf"
ModelKind parse_model_kind(std::string_view name);

// Defaults: 6 x 200 rectifier layers for 500 epochs, 100 trees. Adam at
// 1e-3, full batch below 1024 samples, batches of 128 above.
struct TrainConfig {
  ModelKind kind = ModelKind::FeedForward;
  int hidden_layers = 6;
  int hidden_units = 200;
  int epochs = 500;
  double learning_rate = 1e-3;
  int batch_size = 0;  // 0 = automatic
  int n_estimators = 100;
  int max_depth = 0;   // 0 = unlimited
  int min_samples_leaf = 1;
  std::uint64_t seed = 1;

  void validate() const;
  int effective_batch(std::size_t samples) const;
};

}  // namespace agerec
