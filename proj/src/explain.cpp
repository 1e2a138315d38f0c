#include "agerec/explain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "agerec/error.hpp"
#include "agerec/evaluation.hpp"
#include "agerec/pipeline.hpp"

namespace agerec {

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("pearson: sequences differ in length");
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  // Relative threshold so that constant columns with rounding noise in the
  // mean still count as constant.
  const double eps = 1e-24;
  if (sxx <= eps * (mx * mx * n + 1) || syy <= eps * (my * my * n + 1)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

void assign_ranks(FeatureRankTable& t) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) t.rows[i].rank = static_cast<int>(i) + 1;
}

}  // namespace

CorrelationRanking correlation_ranking(const Eigen::MatrixXd& X,
                                       const std::vector<std::string>& columns,
                                       std::span<const double> ages) {
  if (static_cast<std::size_t>(X.cols()) != columns.size()) {
    throw InvalidArgument("column names do not match the matrix width");
  }
  if (static_cast<std::size_t>(X.rows()) != ages.size()) {
    throw InvalidArgument("ages do not match the matrix rows");
  }
  CorrelationRanking out;
  out.positive.method = "correlation+";
  out.negative.method = "correlation-";
  std::vector<double> col(ages.size());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) col[i] = X(i, j);
    const auto r = pearson(col, ages);
    const auto& name = columns[j];
    if (!r) {
      out.absent.emplace_back(name, "degenerate variance");
    } else if (*r > 0) {
      out.positive.rows.push_back({name, *r, 0});
    } else if (*r < 0) {
      out.negative.rows.push_back({name, *r, 0});
    } else {
      out.absent.emplace_back(name, "zero correlation");
    }
  }
  // Stable sorts keep column order among ties.
  std::stable_sort(out.positive.rows.begin(), out.positive.rows.end(),
                   [](const RankRow& a, const RankRow& b) { return a.score > b.score; });
  std::stable_sort(out.negative.rows.begin(), out.negative.rows.end(),
                   [](const RankRow& a, const RankRow& b) { return a.score < b.score; });
  assign_ranks(out.positive);
  assign_ranks(out.negative);
  return out;
}

double permutation_importance(const ModelArtifact& model, const Schema& schema,
                              const Eigen::MatrixXd& X, std::span<const AgeRange> targets,
                              int feature, int repeats, std::uint64_t seed) {
  if (repeats <= 0) throw InvalidArgument("repeats must be positive");
  if (feature < 0 || feature >= X.cols()) throw InvalidArgument("feature index out of range");
  const double base = mean_mu_e(targets, predict_batch(model, schema, X));
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd shuffled = X;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(X.rows()));
  double drop = 0;
  for (int r = 0; r < repeats; ++r) {
    std::iota(order.begin(), order.end(), 0);
    // Fisher-Yates with plain modulo draws, reproducible across libraries.
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    for (Eigen::Index i = 0; i < X.rows(); ++i) shuffled(i, feature) = X(order[i], feature);
    drop += mean_mu_e(targets, predict_batch(model, schema, shuffled)) - base;
  }
  return drop / repeats;
}

FeatureRankTable permutation_ranking(const ModelArtifact& model, const Schema& schema,
                                     const Eigen::MatrixXd& X, std::span<const AgeRange> targets,
                                     int repeats, std::uint64_t seed) {
  FeatureRankTable t;
  t.method = "permutation";
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double d = permutation_importance(model, schema, X, targets, static_cast<int>(j), repeats,
                                            seed * 1000003ull + static_cast<std::uint64_t>(j));
    t.rows.push_back({schema.columns[j], d, 0});
  }
  std::stable_sort(t.rows.begin(), t.rows.end(),
                   [](const RankRow& a, const RankRow& b) { return a.score > b.score; });
  assign_ranks(t);
  return t;
}

namespace {

double test_mu_e(const Schema& schema, const Eigen::MatrixXd& train_X,
                 std::span<const AgeRange> train_y, const Eigen::MatrixXd& test_X,
                 std::span<const AgeRange> test_y, const TrainConfig& config) {
  const auto model = train_model(schema, train_X, train_y, config);
  return mean_mu_e(test_y, predict_batch(model, schema, test_X));
}

}  // namespace

AblationResult ablation(FeatureCategory category, double full_mu_e, const Eigen::MatrixXd& train_X,
                        std::span<const AgeRange> train_y, const Eigen::MatrixXd& test_X,
                        std::span<const AgeRange> test_y, const TrainConfig& config) {
  if (train_X.cols() != kFeatureCount || test_X.cols() != kFeatureCount) {
    throw InvalidArgument("ablation needs the " + std::to_string(kFeatureCount) +
                          " expert feature columns");
  }
  std::vector<int> keep;
  std::vector<std::string> names;
  for (const auto& f : feature_registry()) {
    if (f.category != category) {
      keep.push_back(f.index);
      names.push_back(f.name);
    }
  }
  const Eigen::MatrixXd tr = train_X(Eigen::all, keep);
  const Eigen::MatrixXd te = test_X(Eigen::all, keep);
  AblationResult out{category, full_mu_e, 0, 0};
  out.removed_mu_e = test_mu_e(Schema::of(names), tr, train_y, te, test_y, config);
  out.delta = out.removed_mu_e - full_mu_e;
  return out;
}

AblationResult ablation(FeatureCategory category, const Eigen::MatrixXd& train_X,
                        std::span<const AgeRange> train_y, const Eigen::MatrixXd& test_X,
                        std::span<const AgeRange> test_y, const TrainConfig& config) {
  const double full = test_mu_e(expert_schema(), train_X, train_y, test_X, test_y, config);
  return ablation(category, full, train_X, train_y, test_X, test_y, config);
}

}  // namespace agerec
