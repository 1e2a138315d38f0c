#pragma once

#include <Eigen/Dense>
#include <vector>

#include "agerec/train_config.hpp"

namespace agerec {

// Multilayer perceptron with rectifier hidden layers and two linear
// outputs (lower and upper bound). Inputs and targets are standardized with
// training statistics; the loss is the squared error summed over both
// outputs, averaged over samples, in standardized target units.
class FeedForward {
 public:
  FeedForward() = default;
  // Random He initialization.
  FeedForward(int inputs, int hidden_layers, int hidden_units, std::uint64_t seed);

  // X: samples x features, Y: samples x 2. Throws InvalidArgument for
  // non-finite data and TrainingDiverged when the loss stops being finite.
  static FeedForward train(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           const TrainConfig& config, std::vector<double>* loss_history = nullptr);

  // Raw (lo, hi) per sample, before range normalization.
  Eigen::MatrixXd predict(const Eigen::MatrixXd& X) const;

  // Loss on already standardized inputs/targets and its gradient with
  // respect to parameters() (same layout).
  double loss_and_gradient(const Eigen::MatrixXd& Xs, const Eigen::MatrixXd& Ys,
                           Eigen::VectorXd* gradient) const;
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& flat);

  int inputs() const { return weights_.empty() ? 0 : static_cast<int>(weights_.front().cols()); }

  // Layer l maps layer l-1 activations: weights_[l] is out x in.
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
  Eigen::VectorXd x_mean_, x_scale_;
  Eigen::VectorXd y_mean_, y_scale_;
};

}  // namespace agerec
