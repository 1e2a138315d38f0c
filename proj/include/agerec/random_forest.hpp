#pragma once

#include <Eigen/Dense>
#include <vector>

#include "agerec/train_config.hpp"

namespace agerec {

// Regression tree over two outputs; a leaf stores the mean (lo, hi) of its
// samples. Splits maximize the reduction of squared error summed over both
// outputs.
struct RegressionTree {
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0;
    int left = -1, right = -1;
    double lo = 0, hi = 0;
  };
  std::vector<Node> nodes;

  std::pair<double, double> predict(const double* row) const;
};

class RandomForest {
 public:
  // Bootstrap-sampled trees, every feature considered at every split.
  static RandomForest train(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                            const TrainConfig& config);
  // Raw (lo, hi) per sample.
  Eigen::MatrixXd predict(const Eigen::MatrixXd& X) const;

  int inputs = 0;
  std::vector<RegressionTree> trees;
};

}  // namespace agerec
