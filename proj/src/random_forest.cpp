#include "agerec/random_forest.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "agerec/error.hpp"

namespace agerec {

std::pair<double, double> RegressionTree::predict(const double* row) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const Node& n = nodes[static_cast<std::size_t>(i)];
    i = row[n.feature] <= n.threshold ? n.left : n.right;
  }
  const Node& leaf = nodes[static_cast<std::size_t>(i)];
  return {leaf.lo, leaf.hi};
}

namespace {

// Row-major copy so a sample's features are contiguous.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class TreeBuilder {
 public:
  TreeBuilder(const RowMatrix& X, const Eigen::MatrixXd& Y, const TrainConfig& config)
      : X_(X), Y_(Y), config_(config) {}

  RegressionTree build(std::vector<std::size_t> samples) {
    tree_ = RegressionTree{};
    grow(samples, 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t>& idx, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    double s0 = 0, s1 = 0;
    for (auto i : idx) {
      s0 += Y_(static_cast<Eigen::Index>(i), 0);
      s1 += Y_(static_cast<Eigen::Index>(i), 1);
    }
    const double n = static_cast<double>(idx.size());
    tree_.nodes[id].lo = s0 / n;
    tree_.nodes[id].hi = s1 / n;

    const std::size_t min_leaf = static_cast<std::size_t>(config_.min_samples_leaf);
    if (idx.size() < 2 * min_leaf || (config_.max_depth > 0 && depth >= config_.max_depth)) return id;

    // Best split by squared-error reduction. For a candidate partition the
    // reduction is sum_L^2/n_L + sum_R^2/n_R - sum^2/n, per output.
    const double base = (s0 * s0 + s1 * s1) / n;
    double best_gain = 1e-12;
    int best_feature = -1;
    double best_threshold = 0;
    std::vector<std::size_t> order(idx);
    for (Eigen::Index f = 0; f < X_.cols(); ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = X_(static_cast<Eigen::Index>(a), f), vb = X_(static_cast<Eigen::Index>(b), f);
        return va < vb || (va == vb && a < b);
      });
      double l0 = 0, l1 = 0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const auto row = static_cast<Eigen::Index>(order[k]);
        l0 += Y_(row, 0);
        l1 += Y_(row, 1);
        const std::size_t nl = k + 1, nr = order.size() - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double v = X_(row, f), next = X_(static_cast<Eigen::Index>(order[k + 1]), f);
        if (!(v < next)) continue;
        const double r0 = s0 - l0, r1 = s1 - l1;
        const double gain = (l0 * l0 + l1 * l1) / static_cast<double>(nl) +
                            (r0 * r0 + r1 * r1) / static_cast<double>(nr) - base;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = 0.5 * (v + next);
          // Guard against the midpoint rounding onto the upper value.
          if (!(best_threshold < next)) best_threshold = v;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto i : idx) {
      (X_(static_cast<Eigen::Index>(i), best_feature) <= best_threshold ? left : right).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    tree_.nodes[id].feature = best_feature;
    tree_.nodes[id].threshold = best_threshold;
    const int l = grow(left, depth + 1);
    tree_.nodes[id].left = l;
    const int r = grow(right, depth + 1);
    tree_.nodes[id].right = r;
    return id;
  }

  const RowMatrix& X_;
  const Eigen::MatrixXd& Y_;
  const TrainConfig& config_;
  RegressionTree tree_;
};

}  // namespace

RandomForest RandomForest::train(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                 const TrainConfig& config) {
  config.validate();
  if (X.rows() == 0) throw InvalidArgument("training set is empty");
  if (Y.rows() != X.rows() || Y.cols() != 2) {
    throw InvalidArgument("targets must be one (lo, hi) pair per sample");
  }
  if (!X.allFinite()) throw InvalidArgument("inputs contain NaN or infinite values");
  if (!Y.allFinite()) throw InvalidArgument("targets contain NaN or infinite values");

  const RowMatrix Xr = X;
  RandomForest forest;
  forest.inputs = static_cast<int>(X.cols());
  const auto n = static_cast<std::size_t>(X.rows());
  TreeBuilder builder(Xr, Y, config);
  for (int t = 0; t < config.n_estimators; ++t) {
    // One stream per tree so a tree does not depend on the trees before it.
    std::mt19937_64 rng(config.seed * 1000003ull + static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = pick(rng);
    forest.trees.push_back(builder.build(std::move(sample)));
  }
  return forest;
}

Eigen::MatrixXd RandomForest::predict(const Eigen::MatrixXd& X) const {
  if (X.cols() != inputs) {
    throw InvalidArgument("expected " + std::to_string(inputs) + " input columns, got " +
                          std::to_string(X.cols()));
  }
  const RowMatrix Xr = X;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(X.rows(), 2);
  for (Eigen::Index i = 0; i < Xr.rows(); ++i) {
    double lo = 0, hi = 0;
    for (const auto& tree : trees) {
      const auto [a, b] = tree.predict(Xr.row(i).data());
      lo += a;
      hi += b;
    }
    out(i, 0) = lo / static_cast<double>(trees.size());
    out(i, 1) = hi / static_cast<double>(trees.size());
  }
  return out;
}

}  // namespace agerec
