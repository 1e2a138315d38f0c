#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "agerec/error.hpp"
#include "agerec/metric_study.hpp"
#include "gen.hpp"

using namespace agerec;

TEST_SUITE("metric_study") {

TEST_CASE("average ranks share ties") {
  const std::vector<double> v = {3, 1, 3, 2};
  CHECK(average_ranks(v) == std::vector<double>{3.5, 1, 3.5, 2});
  CHECK(average_ranks(std::vector<double>{}).empty());
}

TEST_CASE("footrule") {
  const std::vector<double> a = {1, 2, 3, 4}, b = {4, 3, 2, 1};
  CHECK(spearman_footrule(a, a) == 0.0);
  CHECK(spearman_footrule(a, b) == doctest::Approx(2.0));  // (3+1+1+3)/4
  CHECK_THROWS_AS(spearman_footrule(a, std::vector<double>{1, 2}), InvalidArgument);
}

TEST_CASE("default study is a valid 20-hypothesis study against [8, 12]") {
  const auto& s = default_study();
  CHECK(s.hypotheses.size() == 20);
  CHECK(s.reference == AgeRange{8, 12});
  CHECK_NOTHROW(s.validate());
  std::vector<double> sorted = s.oracle_ranks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == double(i + 1));
}

TEST_CASE("weighted metrics beat Jaccard and random on the default study") {
  const std::vector<NamedMetric> metrics = {{Metric::BetaIE, {0.5, 1.0 / 3.0}},
                                            {Metric::ThetaL2, {0.5, 1.0 / 3.0}},
                                            {Metric::Jaccard, {}}};
  const auto res = run_metric_study(default_study(), metrics, 2000, 5);
  auto s_of = [&](Metric m) {
    for (const auto& r : res.rows) {
      if (r.metric == m) return r.footrule;
    }
    FAIL("metric missing");
    return 0.0;
  };
  CHECK(s_of(Metric::BetaIE) < s_of(Metric::Jaccard));
  CHECK(s_of(Metric::ThetaL2) < s_of(Metric::Jaccard));
  CHECK(s_of(Metric::Jaccard) < res.random_footrule_mean);
  // Rows come sorted by ascending footrule.
  CHECK(std::is_sorted(res.rows.begin(), res.rows.end(),
                       [](const MetricScore& a, const MetricScore& b) { return a.footrule < b.footrule; }));
}

TEST_CASE("random-metric mean matches the expected footrule of a random permutation") {
  // E|σ(i) - i| averaged over i is (n² - 1) / (3n) for a uniform permutation.
  const double n = 20;
  const double expected = (n * n - 1) / (3 * n);
  const auto res = run_metric_study(default_study(), {}, 4000, 9);
  const double se = res.random_footrule_std / std::sqrt(4000.0);
  CHECK(std::abs(res.random_footrule_mean - expected) < 5 * se);
}

TEST_CASE("study file parsing") {
  std::istringstream ok(R"(# comment
{"ref_lo": 4, "ref_hi": 8}
{"lo": 4, "hi": 8, "oracle_rank": 1}
{"lo": 0, "hi": 2, "oracle_rank": 2, "label": "far"}
)");
  const auto s = parse_study(ok);
  CHECK(s.hypotheses.size() == 2);
  CHECK(s.labels[1] == "far");

  std::istringstream bad_rank(R"({"ref_lo": 4, "ref_hi": 8}
{"lo": 4, "hi": 8, "oracle_rank": 1}
{"lo": 0, "hi": 2, "oracle_rank": 1}
)");
  CHECK_THROWS(parse_study(bad_rank));
  std::istringstream bad_json("{\"ref_lo\": 4, \"ref_hi\": 8}\n{oops\n");
  CHECK_THROWS_AS(parse_study(bad_json), ParseError);
}

TEST_CASE("property: footrule of a metric equals its definition") {
  testgen::Rng rng(21);
  const auto& study = default_study();
  for (Metric m : all_metrics()) {
    const auto ranks = rank_hypotheses(m, {}, study);
    double sum = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) sum += std::abs(ranks[i] - study.oracle_ranks[i]);
    const auto res = run_metric_study(study, {{m, {}}}, 0);
    CHECK(res.rows.front().footrule == doctest::Approx(sum / ranks.size()));
  }
  // Footrule is symmetric and zero only on equal rankings.
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(8), b(8);
    std::iota(a.begin(), a.end(), 1.0);
    std::iota(b.begin(), b.end(), 1.0);
    for (std::size_t i = 8; i > 1; --i) std::swap(b[i - 1], b[rng.below(i)]);
    CHECK(spearman_footrule(a, b) == spearman_footrule(b, a));
    CHECK((spearman_footrule(a, b) == 0.0) == (a == b));
  }
}

}
