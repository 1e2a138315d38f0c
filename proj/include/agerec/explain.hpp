#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agerec/feature_registry.hpp"
#include "agerec/interval_metrics.hpp"
#include "agerec/model.hpp"

namespace agerec {

// Product-moment correlation. Absent when either side has zero variance or
// fewer than two values; throws for different lengths.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

struct RankRow {
  std::string name;
  double score = 0;
  int rank = 0;

  friend bool operator==(const RankRow&, const RankRow&) = default;
};

struct FeatureRankTable {
  std::string method;  // "correlation+", "correlation-", "permutation"
  std::vector<RankRow> rows;

  friend bool operator==(const FeatureRankTable&, const FeatureRankTable&) = default;
};

struct CorrelationRanking {
  FeatureRankTable positive;  // r > 0, descending r
  FeatureRankTable negative;  // r < 0, ascending r
  // Features left out, with the reason ("degenerate variance").
  std::vector<std::pair<std::string, std::string>> absent;
};

// Correlates each column with `ages` (mean ages, real or predicted).
CorrelationRanking correlation_ranking(const Eigen::MatrixXd& X,
                                       const std::vector<std::string>& columns,
                                       std::span<const double> ages);

// Mean over `repeats` shuffles of column `feature` of (μE shuffled - μE
// baseline). Positive means the model relies on the feature.
double permutation_importance(const ModelArtifact& model, const Schema& schema,
                              const Eigen::MatrixXd& X, std::span<const AgeRange> targets,
                              int feature, int repeats = 5, std::uint64_t seed = 1);

// Importance of every column, ranked by descending drop. Each column gets
// its own seed stream derived from `seed`.
FeatureRankTable permutation_ranking(const ModelArtifact& model, const Schema& schema,
                                     const Eigen::MatrixXd& X, std::span<const AgeRange> targets,
                                     int repeats = 5, std::uint64_t seed = 1);

struct AblationResult {
  FeatureCategory category;
  double full_mu_e = 0;
  double removed_mu_e = 0;
  double delta = 0;  // removed - full; positive when the category helps
};

// Retrains `config` on expert features without the category's columns
// (standardization statistics are recomputed) and compares test μE.
AblationResult ablation(FeatureCategory category, const Eigen::MatrixXd& train_X,
                        std::span<const AgeRange> train_y, const Eigen::MatrixXd& test_X,
                        std::span<const AgeRange> test_y, const TrainConfig& config);
// Same, with the full-model μE already known.
AblationResult ablation(FeatureCategory category, double full_mu_e, const Eigen::MatrixXd& train_X,
                        std::span<const AgeRange> train_y, const Eigen::MatrixXd& test_X,
                        std::span<const AgeRange> test_y, const TrainConfig& config);

}  // namespace agerec
