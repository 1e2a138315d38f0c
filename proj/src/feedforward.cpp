#include "agerec/feedforward.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "agerec/error.hpp"

namespace agerec {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + " contain NaN or infinite values");
}

// Column statistics; constant columns get scale 1.
void column_stats(const Eigen::MatrixXd& m, Eigen::VectorXd& mean, Eigen::VectorXd& scale) {
  mean = m.colwise().mean().transpose();
  scale.resize(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double var = (m.col(j).array() - mean(j)).square().mean();
    scale(j) = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
}

Eigen::MatrixXd standardize(const Eigen::MatrixXd& m, const Eigen::VectorXd& mean,
                            const Eigen::VectorXd& scale) {
  return (m.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

}  // namespace

FeedForward::FeedForward(int inputs, int hidden_layers, int hidden_units, std::uint64_t seed) {
  if (inputs <= 0 || hidden_layers < 0 || (hidden_layers > 0 && hidden_units <= 0)) {
    throw InvalidArgument("invalid network shape");
  }
  std::mt19937_64 rng(seed);
  int fan_in = inputs;
  auto layer = [&](int out, double gain) {
    std::normal_distribution<double> dist(0.0, std::sqrt(gain / fan_in));
    Eigen::MatrixXd w(out, fan_in);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(out));
    fan_in = out;
  };
  for (int l = 0; l < hidden_layers; ++l) layer(hidden_units, 2.0);
  layer(2, 1.0);
  x_mean_ = Eigen::VectorXd::Zero(inputs);
  x_scale_ = Eigen::VectorXd::Ones(inputs);
  y_mean_ = Eigen::VectorXd::Zero(2);
  y_scale_ = Eigen::VectorXd::Ones(2);
}

double FeedForward::loss_and_gradient(const Eigen::MatrixXd& Xs, const Eigen::MatrixXd& Ys,
                                      Eigen::VectorXd* gradient) const {
  const std::size_t L = weights_.size();
  const double n = static_cast<double>(Xs.rows());
  // Forward pass, samples as columns.
  std::vector<Eigen::MatrixXd> acts(L + 1);
  acts[0] = Xs.transpose();
  for (std::size_t l = 0; l < L; ++l) {
    Eigen::MatrixXd z = weights_[l] * acts[l];
    z.colwise() += biases_[l];
    if (l + 1 < L) z = z.cwiseMax(0.0);
    acts[l + 1] = std::move(z);
  }
  const Eigen::MatrixXd diff = acts[L] - Ys.transpose();
  const double loss = diff.squaredNorm() / n;
  if (!gradient) return loss;

  gradient->resize(parameters().size());
  std::vector<Eigen::MatrixXd> dW(L);
  std::vector<Eigen::VectorXd> db(L);
  Eigen::MatrixXd delta = (2.0 / n) * diff;
  for (std::size_t l = L; l-- > 0;) {
    dW[l] = delta * acts[l].transpose();
    db[l] = delta.rowwise().sum();
    if (l > 0) {
      delta = weights_[l].transpose() * delta;
      delta = delta.cwiseProduct((acts[l].array() > 0.0).cast<double>().matrix());
    }
  }
  Eigen::Index off = 0;
  for (std::size_t l = 0; l < L; ++l) {
    gradient->segment(off, dW[l].size()) = Eigen::Map<const Eigen::VectorXd>(dW[l].data(), dW[l].size());
    off += dW[l].size();
    gradient->segment(off, db[l].size()) = db[l];
    off += db[l].size();
  }
  return loss;
}

Eigen::VectorXd FeedForward::parameters() const {
  Eigen::Index total = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) total += weights_[l].size() + biases_[l].size();
  Eigen::VectorXd flat(total);
  Eigen::Index off = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    flat.segment(off, weights_[l].size()) =
        Eigen::Map<const Eigen::VectorXd>(weights_[l].data(), weights_[l].size());
    off += weights_[l].size();
    flat.segment(off, biases_[l].size()) = biases_[l];
    off += biases_[l].size();
  }
  return flat;
}

void FeedForward::set_parameters(const Eigen::VectorXd& flat) {
  if (flat.size() != parameters().size()) throw InvalidArgument("parameter vector has the wrong size");
  Eigen::Index off = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::Map<Eigen::VectorXd>(weights_[l].data(), weights_[l].size()) =
        flat.segment(off, weights_[l].size());
    off += weights_[l].size();
    biases_[l] = flat.segment(off, biases_[l].size());
    off += biases_[l].size();
  }
}

FeedForward FeedForward::train(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                               const TrainConfig& config, std::vector<double>* loss_history) {
  config.validate();
  if (X.rows() == 0) throw InvalidArgument("training set is empty");
  if (Y.rows() != X.rows() || Y.cols() != 2) {
    throw InvalidArgument("targets must be one (lo, hi) pair per sample");
  }
  check_finite(X, "inputs");
  check_finite(Y, "targets");

  FeedForward net(static_cast<int>(X.cols()), config.hidden_layers, config.hidden_units,
                  config.seed);
  column_stats(X, net.x_mean_, net.x_scale_);
  column_stats(Y, net.y_mean_, net.y_scale_);
  const Eigen::MatrixXd Xs = standardize(X, net.x_mean_, net.x_scale_);
  const Eigen::MatrixXd Ys = standardize(Y, net.y_mean_, net.y_scale_);

  const auto n = static_cast<std::size_t>(X.rows());
  const std::size_t batch = static_cast<std::size_t>(config.effective_batch(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ull);

  // Adam.
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  Eigen::VectorXd theta = net.parameters();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(theta.size()), v = m, grad;
  long step = 0;
  Eigen::MatrixXd xb, yb;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (batch < n) std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t count = std::min(batch, n - start);
      double loss = 0;
      if (count == n) {
        loss = net.loss_and_gradient(Xs, Ys, &grad);
      } else {
        xb.resize(static_cast<Eigen::Index>(count), Xs.cols());
        yb.resize(static_cast<Eigen::Index>(count), 2);
        for (std::size_t k = 0; k < count; ++k) {
          xb.row(static_cast<Eigen::Index>(k)) = Xs.row(static_cast<Eigen::Index>(order[start + k]));
          yb.row(static_cast<Eigen::Index>(k)) = Ys.row(static_cast<Eigen::Index>(order[start + k]));
        }
        loss = net.loss_and_gradient(xb, yb, &grad);
      }
      if (!std::isfinite(loss) || !grad.allFinite()) {
        throw TrainingDiverged("feed-forward training diverged at epoch " + std::to_string(epoch + 1) +
                               " (loss " + std::to_string(loss) + ")");
      }
      epoch_loss += loss * static_cast<double>(count);
      ++step;
      m = b1 * m + (1 - b1) * grad;
      v = b2 * v + (1 - b2) * grad.cwiseProduct(grad);
      const double c1 = 1 - std::pow(b1, static_cast<double>(step));
      const double c2 = 1 - std::pow(b2, static_cast<double>(step));
      theta.array() -= config.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
      net.set_parameters(theta);
    }
    if (loss_history) loss_history->push_back(epoch_loss / static_cast<double>(n));
  }
  // A constant target column is its training mean exactly.
  for (Eigen::Index k = 0; k < 2; ++k) {
    if ((Y.col(k).array() == Y(0, k)).all()) {
      net.weights_.back().row(k).setZero();
      net.biases_.back()(k) = 0.0;
    }
  }
  return net;
}

Eigen::MatrixXd FeedForward::predict(const Eigen::MatrixXd& X) const {
  if (X.cols() != inputs()) {
    throw InvalidArgument("expected " + std::to_string(inputs()) + " input columns, got " +
                          std::to_string(X.cols()));
  }
  Eigen::MatrixXd a = standardize(X, x_mean_, x_scale_).transpose();
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = weights_[l] * a;
    z.colwise() += biases_[l];
    if (l + 1 < weights_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  Eigen::MatrixXd out = a.transpose();
  out = (out.array().rowwise() * y_scale_.transpose().array()).matrix();
  out.rowwise() += y_mean_.transpose();
  return out;
}

}  // namespace agerec
