#include <doctest.h>

#include <cmath>
#include <numeric>

#include "agerec/error.hpp"
#include "agerec/evaluation.hpp"
#include "agerec/explain.hpp"
#include "gen.hpp"

using namespace agerec;

namespace {

using Preds = std::unordered_map<std::string, RangePrediction>;

RangePrediction rp(double lo, double hi) { return RangePrediction::normalize(lo, hi); }

// Independent product-moment correlation in long double.
double oracle_r(const std::vector<double>& x, const std::vector<double>& y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double a = 0, b = 0, c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a += (x[i] - mx) * (y[i] - my);
    b += (x[i] - mx) * (x[i] - mx);
    c += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(a / std::sqrt(b * c));
}

struct Task {
  Eigen::MatrixXd X;
  std::vector<AgeRange> y;
  std::vector<double> ages;
};

// Column `signal` carries the mean age; the rest is noise.
Task make_task(int n, int width, int signal, std::uint64_t seed) {
  testgen::Rng rng(seed);
  Task t;
  t.X.resize(n, width);
  for (int i = 0; i < n; ++i) {
    const auto r = testgen::range(rng, 2, 16);
    t.y.push_back(r);
    t.ages.push_back(r.mean());
    for (int j = 0; j < width; ++j) t.X(i, j) = rng.uniform(-1, 1);
    if (signal >= 0) t.X(i, signal) = r.mean();
  }
  return t;
}

std::vector<std::string> names(int width) {
  std::vector<std::string> out;
  for (int j = 0; j < width; ++j) out.push_back("c" + std::to_string(j));
  return out;
}

TrainConfig forest(int trees = 8) {
  TrainConfig c;
  c.kind = ModelKind::RandomForest;
  c.n_estimators = trees;
  c.seed = 5;
  return c;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("evaluation examples") {
  const std::vector<Reference> refs = {{"a", Genre::Fiction, {8, 12}}, {"b", Genre::Newspaper, {6, 10}}};
  const auto perfect = evaluate(Preds{{"a", rp(8, 12)}, {"b", rp(6, 10)}}, refs);
  CHECK(perfect.overall.count == 2);
  CHECK(perfect.overall.mu_e == 0);
  CHECK(perfect.overall.theta_l2 == 0);
  CHECK(perfect.overall.beta_ie == 0);

  const auto shifted = evaluate(Preds{{"a", rp(6, 10)}, {"b", rp(6, 10)}}, refs);
  CHECK(shifted.overall.mu_e == doctest::Approx(1.0));
  CHECK(shifted.genres.at("fiction").mu_e == doctest::Approx(2.0));
  CHECK(shifted.genres.at("newspaper").mu_e == 0);
  CHECK(shifted.genres.count("encyclopedia") == 0);
  CHECK(shifted.ranges.at("[8, 12]").count == 1);
  // Ages 8..10 are covered by both references, 6..7 only by b, 11..12 only by a.
  CHECK(shifted.ages[9].count == 2);
  CHECK(shifted.ages[7].count == 1);
  CHECK(shifted.ages[12].count == 1);
  CHECK(shifted.ages[13].count == 0);

  // Naive baseline trained on both references predicts [7, 11], one year
  // off each mean.
  const auto naive = evaluate(Preds{{"a", rp(7, 11)}, {"b", rp(7, 11)}}, refs);
  CHECK(naive.overall.mu_e == doctest::Approx(1.0));

  CHECK_THROWS_AS(evaluate(Preds{{"a", rp(8, 12)}}, refs), InvalidArgument);
  CHECK_THROWS_AS(evaluate(Preds{{"a", rp(8, 12)}, {"b", rp(6, 10)}, {"c", rp(1, 2)}}, refs),
                  InvalidArgument);
  MetricConfig bad;
  bad.beta = 2;
  CHECK_THROWS_AS(evaluate(Preds{{"a", rp(8, 12)}, {"b", rp(6, 10)}}, refs, bad), InvalidArgument);
}

TEST_CASE("property: overall is the count-weighted mean of the genre buckets") {
  testgen::Rng rng(71);
  const Genre genres[] = {Genre::Encyclopedia, Genre::Newspaper, Genre::Fiction, Genre::Other};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Reference> refs;
    Preds preds;
    const std::size_t n = 1 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [r, h] = testgen::range_pair(rng, testgen::layout_for(i));
      const std::string id = "d" + std::to_string(i);
      refs.push_back({id, genres[rng.below(4)], r});
      preds.emplace(id, rp(h.lo, h.hi));
    }
    const auto rep = evaluate(preds, refs);
    std::size_t count = 0;
    double mu = 0, beta = 0;
    for (const auto& [name, s] : rep.genres) {
      count += s.count;
      mu += s.mu_e * static_cast<double>(s.count);
      beta += s.beta_ie * static_cast<double>(s.count);
    }
    CHECK(count == n);
    CHECK(rep.overall.mu_e == doctest::Approx(mu / static_cast<double>(n)).epsilon(1e-12));
    CHECK(rep.overall.beta_ie == doctest::Approx(beta / static_cast<double>(n)).epsilon(1e-12));

    // Each reference [a, b] lands in floor(b) - ceil(a) + 1 age buckets.
    std::size_t expected = 0, got = 0;
    for (const auto& ref : refs) {
      const long first = std::max(0L, static_cast<long>(std::ceil(ref.age.lo)));
      const long last = std::min(18L, static_cast<long>(std::floor(ref.age.hi)));
      if (last >= first) expected += static_cast<std::size_t>(last - first + 1);
    }
    for (const auto& s : rep.ages) got += s.count;
    CHECK(got == expected);
  }
}

TEST_CASE("pearson") {
  const std::vector<double> a = {1, 2, 3}, b = {1, 3, 2};
  CHECK(*pearson(a, b) == doctest::Approx(0.5));
  CHECK(*pearson(a, a) == doctest::Approx(1.0));
  const std::vector<double> flat = {4, 4, 4};
  CHECK_FALSE(pearson(a, flat).has_value());
  const std::vector<double> one = {1};
  CHECK_FALSE(pearson(one, one).has_value());
  const std::vector<double> two = {1, 2};
  CHECK_THROWS_AS(pearson(a, two), InvalidArgument);
  // Constant column whose mean is not exactly representable.
  const std::vector<double> tenths(7, 0.1);
  const std::vector<double> ramp = {1, 2, 3, 4, 5, 6, 7};
  CHECK_FALSE(pearson(tenths, ramp).has_value());
}

TEST_CASE("property: pearson matches the oracle and is affine invariant") {
  testgen::Rng rng(72);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<double> x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.uniform(-5, 5);
      y[i] = 0.5 * x[i] + rng.uniform(-3, 3);
    }
    const double scale = rng.uniform(0.1, 10), shift = rng.uniform(-100, 100);
    for (std::size_t i = 0; i < n; ++i) z[i] = scale * x[i] + shift;
    const auto r = pearson(x, y);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(oracle_r(x, y)).epsilon(1e-9));
    CHECK(*pearson(z, y) == doctest::Approx(*r).epsilon(1e-9));
    for (auto& v : z) v = -v;
    CHECK(*pearson(z, y) == doctest::Approx(-*r).epsilon(1e-9));
    CHECK(std::abs(*r) <= 1.0);
  }
}

TEST_CASE("correlation ranking") {
  auto t = make_task(120, 6, 2, 73);
  for (int i = 0; i < 120; ++i) {
    t.X(i, 4) = -t.ages[static_cast<std::size_t>(i)] + 0.01 * t.X(i, 0);
    t.X(i, 5) = 3.25;
  }
  const auto r = correlation_ranking(t.X, names(6), t.ages);
  REQUIRE_FALSE(r.positive.rows.empty());
  CHECK(r.positive.rows[0].name == "c2");
  CHECK(r.positive.rows[0].rank == 1);
  CHECK(r.positive.rows[0].score == doctest::Approx(1.0));
  REQUIRE_FALSE(r.negative.rows.empty());
  CHECK(r.negative.rows[0].name == "c4");
  CHECK(r.negative.rows[0].score < -0.99);
  REQUIRE(r.absent.size() == 1);
  CHECK(r.absent[0].first == "c5");
  CHECK(r.positive.rows.size() + r.negative.rows.size() + r.absent.size() == 6);
  for (std::size_t i = 1; i < r.positive.rows.size(); ++i) {
    CHECK(r.positive.rows[i - 1].score >= r.positive.rows[i].score);
    CHECK(r.positive.rows[i].rank == static_cast<int>(i) + 1);
  }
  CHECK_THROWS_AS(correlation_ranking(t.X, names(5), t.ages), InvalidArgument);
}

TEST_CASE("permutation importance") {
  const auto t = make_task(150, 5, 3, 74);
  const auto schema = Schema::of(names(5));
  const auto rf = train_model(schema, t.X, t.y, forest());
  const auto table = permutation_ranking(rf, schema, t.X, t.y, 3, 7);
  CHECK(table.method == "permutation");
  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows[0].name == "c3");
  CHECK(table.rows[0].score > 1.0);
  CHECK(table.rows[0].score > 5 * std::abs(table.rows[1].score));
  CHECK(permutation_ranking(rf, schema, t.X, t.y, 3, 7) == table);

  TrainConfig naive;
  naive.kind = ModelKind::Naive;
  const auto flat = train_model(schema, t.X, t.y, naive);
  for (int j = 0; j < 5; ++j) CHECK(permutation_importance(flat, schema, t.X, t.y, j, 3) == 0.0);
  CHECK_THROWS_AS(permutation_importance(rf, schema, t.X, t.y, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(permutation_importance(rf, schema, t.X, t.y, 9, 1), InvalidArgument);
}

TEST_CASE("category ablation") {
  // Lexicon columns carry the age; Connectors stay constant.
  auto train = make_task(120, kFeatureCount, -1, 75);
  auto test = make_task(50, kFeatureCount, -1, 76);
  for (auto* t : {&train, &test}) {
    for (Eigen::Index i = 0; i < t->X.rows(); ++i) {
      for (int j : category_indices(FeatureCategory::Lexicon)) {
        t->X(i, j) = t->ages[static_cast<std::size_t>(i)];
      }
      for (int j : category_indices(FeatureCategory::Connectors)) t->X(i, j) = 0.0;
    }
  }
  const auto cfg = forest(5);
  const auto lex = ablation(FeatureCategory::Lexicon, train.X, train.y, test.X, test.y, cfg);
  CHECK(lex.delta > 1.0);
  CHECK(lex.delta == doctest::Approx(lex.removed_mu_e - lex.full_mu_e));
  const auto conn = ablation(FeatureCategory::Connectors, lex.full_mu_e, train.X, train.y, test.X,
                             test.y, cfg);
  CHECK(std::abs(conn.delta) < 0.1);
  CHECK(conn.full_mu_e == lex.full_mu_e);
  Eigen::MatrixXd narrow = train.X.leftCols(10);
  CHECK_THROWS_AS(ablation(FeatureCategory::Lexicon, narrow, train.y, narrow, train.y, cfg),
                  InvalidArgument);
}

}  // TEST_SUITE
