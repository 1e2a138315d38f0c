#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "agerec/baselines.hpp"
#include "agerec/error.hpp"
#include "agerec/feedforward.hpp"
#include "agerec/model.hpp"
#include "agerec/random_forest.hpp"
#include "agerec/range_prediction.hpp"
#include "gen.hpp"

using namespace agerec;

namespace {

TrainConfig small_ff(int epochs = 200) {
  TrainConfig c;
  c.kind = ModelKind::FeedForward;
  c.hidden_layers = 2;
  c.hidden_units = 8;
  c.epochs = epochs;
  c.learning_rate = 1e-2;
  c.seed = 3;
  return c;
}

TrainConfig small_rf(int trees = 10) {
  TrainConfig c;
  c.kind = ModelKind::RandomForest;
  c.n_estimators = trees;
  c.seed = 3;
  return c;
}

// Targets that depend on the first column only.
void linear_data(Eigen::MatrixXd& X, Eigen::MatrixXd& Y, int n, std::uint64_t seed) {
  testgen::Rng rng(seed);
  X.resize(n, 3);
  Y.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) X(i, j) = rng.uniform(-1, 1);
    Y(i, 0) = 8 + 3 * X(i, 0);
    Y(i, 1) = Y(i, 0) + 4;
  }
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("range prediction normalization") {
  const auto p = RangePrediction::normalize(10, 6);
  CHECK(p.lo == 6);
  CHECK(p.hi == 10);
  CHECK(p.mu == 8);
  CHECK(p.normalized);
  const auto q = RangePrediction::normalize(-2, 25);
  CHECK(q.lo == 0);
  CHECK(q.hi == 18);
  CHECK(q.normalized);
  const auto r = RangePrediction::normalize(4, 9);
  CHECK_FALSE(r.normalized);
  CHECK(r.mu == 6.5);
  CHECK_THROWS_AS(RangePrediction::normalize(NAN, 3), InvalidArgument);
  CHECK_THROWS_AS(RangePrediction::normalize(1, INFINITY), InvalidArgument);
}

TEST_CASE("aggregate mean") {
  const std::vector<RangePrediction> ps = {RangePrediction::normalize(4, 8),
                                           RangePrediction::normalize(8, 12),
                                           RangePrediction::normalize(6, 10)};
  const auto m = aggregate_mean(ps);
  CHECK(m.lo == 6);
  CHECK(m.hi == 10);
  CHECK(m.mu == 8);
  CHECK_FALSE(m.normalized);
  const std::vector<RangePrediction> flagged = {RangePrediction::normalize(9, 3),
                                                RangePrediction::normalize(3, 9)};
  CHECK(aggregate_mean(flagged).normalized);
  CHECK_THROWS_AS(aggregate_mean(std::vector<RangePrediction>{}), InvalidArgument);
}

TEST_CASE("property: aggregate mean is permutation invariant and bounded") {
  testgen::Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<RangePrediction> ps;
    for (std::size_t k = 0, n = 1 + rng.below(10); k < n; ++k) {
      const auto r = testgen::range(rng);
      ps.push_back(RangePrediction::normalize(r.lo, r.hi));
    }
    const auto a = aggregate_mean(ps);
    for (std::size_t i = ps.size(); i > 1; --i) std::swap(ps[i - 1], ps[rng.below(i)]);
    CHECK(aggregate_mean(ps) == a);
    CHECK(a.lo <= a.hi);
    double min_lo = 18, max_hi = 0;
    for (const auto& p : ps) {
      min_lo = std::min(min_lo, p.lo);
      max_hi = std::max(max_hi, p.hi);
    }
    CHECK(a.lo >= min_lo - 1e-12);
    CHECK(a.hi <= max_hi + 1e-12);
  }
}

TEST_CASE("naive model") {
  const std::vector<AgeRange> train = {{4, 8}, {8, 12}};
  const auto m = naive_fit(train);
  CHECK(m.lo == 6);
  CHECK(m.hi == 10);
  CHECK(m.predict().mu == 8);
  CHECK_THROWS_AS(naive_fit(std::vector<AgeRange>{}), InvalidArgument);
}

TEST_CASE("property: naive error on its own training set is the mean absolute deviation") {
  testgen::Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AgeRange> train;
    for (std::size_t k = 0, n = 1 + rng.below(30); k < n; ++k) train.push_back(testgen::range(rng));
    const auto p = naive_fit(train).predict();
    // Oracle: deviation of each midpoint from the mean midpoint.
    double centre = 0;
    for (const auto& r : train) centre += (r.lo + r.hi) / 2;
    centre /= static_cast<double>(train.size());
    double mad = 0, err = 0;
    for (const auto& r : train) {
      mad += std::abs((r.lo + r.hi) / 2 - centre);
      err += mu_e(r, p.range());
    }
    CHECK(err / static_cast<double>(train.size()) ==
          doctest::Approx(mad / static_cast<double>(train.size())).epsilon(1e-12));
  }
}

TEST_CASE("Flesch-Kincaid baseline") {
  CHECK(grade_to_age(4.5) == 10.0);
  CHECK(flesch_kincaid_grade(10, 1, 15) == doctest::Approx(6.01));
  CHECK(flesch_kincaid_age(10, 1, 15).lo == doctest::Approx(11.51));
  CHECK(flesch_kincaid_age(100, 10, 100).mu == doctest::Approx(5.61));
  CHECK(flesch_kincaid_age(10, 1, 15, 5.0).mu == doctest::Approx(11.01));
  const auto extreme = flesch_kincaid_age(100, 1, 400);
  CHECK(extreme.hi == 18);
  CHECK(extreme.normalized);
  CHECK_THROWS_AS(flesch_kincaid_grade(0, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(flesch_kincaid_grade(5, 0, 5), InvalidArgument);
  const auto c = readability_counts({"Le chat dort.", "..."});
  CHECK(c.words == 3);
  CHECK(c.sentences == 1);
}

TEST_CASE("train config") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.effective_batch(300) == 300);
  CHECK(c.effective_batch(5000) == 128);
  c.batch_size = 16;
  CHECK(c.effective_batch(300) == 16);
  c.epochs = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  CHECK(parse_model_kind("random-forest") == ModelKind::RandomForest);
  CHECK(parse_model_kind("FF") == ModelKind::FeedForward);
  CHECK(model_kind_name(ModelKind::Naive) == "naive");
  CHECK_THROWS_AS(parse_model_kind("svm"), InvalidArgument);
}

TEST_CASE("feed-forward gradient matches central differences") {
  FeedForward net(3, 2, 3, 11);
  testgen::Rng rng(53);
  Eigen::VectorXd theta = net.parameters();
  // Random biases keep the rectifiers away from their kink.
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = rng.uniform(-1, 1);
  net.set_parameters(theta);
  Eigen::MatrixXd X(5, 3), Y(5, 2);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-2, 2);
  for (Eigen::Index i = 0; i < Y.size(); ++i) Y.data()[i] = rng.uniform(-1, 1);
  Eigen::VectorXd grad;
  net.loss_and_gradient(X, Y, &grad);
  REQUIRE(grad.size() == theta.size());
  CHECK(theta.size() == 3 * 3 + 3 + 3 * 3 + 3 + 2 * 3 + 2);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::VectorXd plus = theta, minus = theta;
    plus[i] += h;
    minus[i] -= h;
    net.set_parameters(plus);
    const double lp = net.loss_and_gradient(X, Y, nullptr);
    net.set_parameters(minus);
    const double lm = net.loss_and_gradient(X, Y, nullptr);
    const double numeric = (lp - lm) / (2 * h);
    CHECK_MESSAGE(std::abs(numeric - grad[i]) <= 1e-5 * std::max(1.0, std::abs(numeric)), "parameter " << i);
  }
  net.set_parameters(theta);
  CHECK(net.parameters() == theta);
  CHECK_THROWS_AS(net.set_parameters(Eigen::VectorXd::Zero(3)), InvalidArgument);
}

TEST_CASE("feed-forward training") {
  Eigen::MatrixXd X, Y;
  linear_data(X, Y, 60, 54);
  std::vector<double> history;
  const auto net = FeedForward::train(X, Y, small_ff(), &history);
  REQUIRE(history.size() == 200);
  CHECK(history.back() < history.front());
  const auto P = net.predict(X);
  CHECK((P - Y).cwiseAbs().mean() < 0.5);

  const auto again = FeedForward::train(X, Y, small_ff());
  CHECK(again.predict(X) == P);

  Eigen::MatrixXd constant = Eigen::MatrixXd::Zero(60, 2);
  constant.col(0).setConstant(7);
  constant.col(1).setConstant(11);
  const auto flat = FeedForward::train(X, constant, small_ff(50));
  const auto C = flat.predict(X);
  CHECK((C.col(0).array() - 7).abs().maxCoeff() < 1e-9);
  CHECK((C.col(1).array() - 11).abs().maxCoeff() < 1e-9);

  Eigen::MatrixXd bad = X;
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(FeedForward::train(bad, Y, small_ff()), InvalidArgument);
  auto diverging = small_ff(50);
  diverging.learning_rate = 1e300;
  CHECK_THROWS_AS(FeedForward::train(X, Y, diverging), TrainingDiverged);
}

TEST_CASE("random forest") {
  Eigen::MatrixXd X, Y;
  linear_data(X, Y, 80, 55);
  const auto rf = RandomForest::train(X, Y, small_rf());
  CHECK(rf.trees.size() == 10);
  CHECK(rf.inputs == 3);
  const auto P = rf.predict(X);
  CHECK((P - Y).cwiseAbs().mean() < 0.6);
  CHECK(RandomForest::train(X, Y, small_rf()).predict(X) == P);

  // A single sample is memorised exactly.
  const auto one = RandomForest::train(X.topRows(1), Y.topRows(1), small_rf(3));
  CHECK(one.predict(X.topRows(1)) == Y.topRows(1));

  // Unstructured targets are fitted closely on the training set.
  testgen::Rng rng(56);
  Eigen::MatrixXd noise(40, 2);
  for (int i = 0; i < 40; ++i) {
    noise(i, 0) = rng.uniform(0, 10);
    noise(i, 1) = noise(i, 0) + rng.uniform(0, 5);
  }
  auto deep = small_rf(30);
  const auto fit = RandomForest::train(X.topRows(40), noise, deep).predict(X.topRows(40));
  const double spread = (noise.rowwise() - noise.colwise().mean()).cwiseAbs().mean();
  CHECK((fit - noise).cwiseAbs().mean() < 0.5 * spread);
}

TEST_CASE("model front end") {
  Eigen::MatrixXd X, Y;
  linear_data(X, Y, 30, 57);
  std::vector<AgeRange> targets;
  for (int i = 0; i < 30; ++i) targets.push_back({Y(i, 0), Y(i, 1)});
  const auto schema = Schema::of({"a", "b", "c"});
  TrainConfig naive;
  naive.kind = ModelKind::Naive;
  const auto m = train_model(schema, X, targets, naive, "corpus");
  const auto p = predict(m, schema, std::vector<double>{0, 0, 0});
  CHECK(p.lo == doctest::Approx(naive_fit(targets).lo));
  CHECK(predict_batch(m, schema, X).size() == 30);
  CHECK_THROWS_AS(predict(m, Schema::of({"a", "b", "x"}), std::vector<double>{0, 0, 0}), SchemaMismatch);
  CHECK_THROWS_AS(predict(m, schema, std::vector<double>{0, NAN, 0}), InvalidArgument);
  CHECK_THROWS_AS(predict(m, schema, std::vector<double>{0, 0}), SchemaMismatch);
  CHECK(m.metadata.train_samples == 30);
  CHECK(m.id().rfind("naive-", 0) == 0);
}

}  // TEST_SUITE
