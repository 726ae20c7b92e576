#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include <gcx/driver.hpp>
#include <gcx/pareto.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "rng_util.hpp"

using namespace gcx;

namespace {

std::set<ItemId> ids(const std::vector<MetricPoint>& points) {
  std::set<ItemId> out;
  for (const auto& p : points) out.insert(p.item);
  return out;
}

std::vector<MetricPoint> random_points(testrng::Rng& rng, std::size_t n, std::size_t d) {
  std::vector<MetricPoint> points;
  points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    MetricPoint p;
    p.item = static_cast<ItemId>(k);
    for (std::size_t w = 0; w < d; ++w) p.coords.push_back(rng.unit());
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace

TEST_CASE("tau_dominates follows the offset definition") {
  MetricPoint a{1, {1.0, 1.0}};
  MetricPoint b{2, {0.0, 0.0}};
  CHECK(tau_dominates(a, b, {0.0, 0.0}));
  CHECK(!tau_dominates(b, a, {0.0, 0.0}));

  // identical coordinates never dominate, whatever the threshold
  MetricPoint c{3, {0.5, 0.5}};
  MetricPoint d{4, {0.5, 0.5}};
  CHECK(!tau_dominates(c, d, {0.0, -0.3}));
  CHECK(!tau_dominates(c, d, {-0.1, -0.3}));

  // a positive threshold can block an otherwise dominating pair
  MetricPoint e{5, {0.5, 0.5}};
  MetricPoint f{6, {0.4, 0.4}};
  CHECK(tau_dominates(e, f, {0.0, 0.0}));
  CHECK(!tau_dominates(e, f, {0.2, 0.2}));

  CHECK_THROWS_AS(tau_dominates(a, b, {0.0}), ValidationError);
}

TEST_CASE("a single point is its own pareto set") {
  std::vector<MetricPoint> one = {{7, {0.2, 0.9, 0.1, 0.4, 0.5}}};
  auto result = tau_pareto_set(one, {0.0, 0.0, 0.0, 0.0, 0.0});
  REQUIRE(result.size() == 1);
  CHECK(result[0] == one[0]);
}

TEST_CASE("tau=0 equals the quadratic brute force on random sets") {
  testrng::Rng rng(2024);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + rng.below(120);
    auto points = random_points(rng, n, 5);
    ThresholdVector zero(5, 0.0);
    CHECK(ids(tau_pareto_set(points, zero)) == ids(oracle::brute_pareto(points, zero)));
  }
}

TEST_CASE("every tau agrees with the brute force, including mixed signs") {
  testrng::Rng rng(77);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 1 + rng.below(80);
    auto points = random_points(rng, n, 4);
    ThresholdVector tau(4);
    for (auto& t : tau) t = (rng.unit() - 0.5) * 0.4;  // in [-0.2, 0.2)
    CHECK(ids(tau_pareto_set(points, tau)) == ids(oracle::brute_pareto(points, tau)));
  }
}

TEST_CASE("relaxing tau grows the set, tightening shrinks it") {
  testrng::Rng rng(5150);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = 2 + rng.below(60);
    auto points = random_points(rng, n, 5);
    auto relaxed = ids(tau_pareto_set(points, ThresholdVector(5, -0.15)));
    auto base = ids(tau_pareto_set(points, ThresholdVector(5, 0.0)));
    auto tightened = ids(tau_pareto_set(points, ThresholdVector(5, 0.15)));
    CHECK(std::includes(relaxed.begin(), relaxed.end(), base.begin(), base.end()));
    CHECK(std::includes(base.begin(), base.end(), tightened.begin(), tightened.end()));
  }
}

TEST_CASE("exact duplicates all survive") {
  std::vector<MetricPoint> points = {
      {1, {0.5, 0.5}}, {2, {0.5, 0.5}}, {3, {0.1, 0.1}}, {4, {0.9, 0.2}}};
  auto result = ids(tau_pareto_set(points, {0.0, 0.0}));
  CHECK(result.count(1) == 1);
  CHECK(result.count(2) == 1);
  CHECK(result.count(3) == 0);
  CHECK(result.count(4) == 1);
}

TEST_CASE("coordinate_stddev is the population deviation") {
  std::vector<MetricPoint> points = {{1, {0.0, 1.0}}, {2, {4.0, 1.0}}};
  auto sigma = coordinate_stddev(points);
  REQUIRE(sigma.size() == 2);
  CHECK(sigma[0] == doctest::Approx(2.0).epsilon(1e-15));  // mean 2, deviations +-2
  CHECK(sigma[1] == 0.0);
}

TEST_CASE("pareto filtering starts from the plain skyline") {
  // The fig-shaped dataset: the skyline of the union does not evict the
  // target, so iteration zero fails and relaxation continues.
  RatingsDataset ds = fixtures::fig_shape();
  Group g = Group::make(ds, {1, 2, 3});
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();
  auto vectors = build_metric_vectors(ds, rec, g, 9, meter);

  Trace trace;
  SearchContext ctx{ds, rec, g, 9, 10, meter, Method::ParetoFiltering, &trace};
  std::vector<ParetoIterationRecord> diag;
  auto result = pareto_filtering(ctx, vectors, 25, &diag);

  REQUIRE(!diag.empty());
  CHECK(diag[0].iteration == 0);
  // iteration zero examined exactly the plain skyline
  auto points = to_metric_points(vectors);
  auto skyline = tau_pareto_set(points, ThresholdVector(5, 0.0));
  CHECK(diag[0].pareto_size == skyline.size());
  // each iteration costs exactly one probe
  CHECK(meter.search_calls() == static_cast<long long>(diag.size()));

  if (result) {
    std::set<ItemId> expected = {2, 5, 8};
    bool covers = std::includes(result->begin(), result->end(), expected.begin(), expected.end());
    CHECK(covers);
    CHECK(verify_explanation(ds, rec, g, *result, 9, 10));
  }
}

TEST_CASE("pareto filtering returns the skyline when it already evicts the target") {
  // Single-link fixture: the union's one high item is the whole story.
  DatasetBuilder b;
  b.add(1, 1, 1.0);          // member, links to helper via item 1
  b.add(2, 1, 0.9);
  b.add(2, 9, 1.0);          // helper rated the target
  RatingsDataset ds = b.build();
  Group g = Group::make(ds, {1});
  CfRecommender rec(ds, 50);
  CallMeter meter = CallMeter::unlimited();
  auto vectors = build_metric_vectors(ds, rec, g, 9, meter);

  SearchContext ctx{ds, rec, g, 9, 10, meter, Method::ParetoFiltering, nullptr};
  auto result = pareto_filtering(ctx, vectors, 25);
  REQUIRE(result.has_value());
  CHECK(*result == std::vector<ItemId>{1});
  CHECK(meter.search_calls() == 1);  // one probe: the skyline sufficed
}

TEST_CASE("pareto filtering reports failure when no relaxation works") {
  // Recommender that always returns the target: nothing can evict it.
  class StickyRecommender final : public GroupRecommender {
   public:
    RecommendationList recommend(const GroupInteractions&, int, CallMeter& meter) const override {
      meter.charge_search();
      return RecommendationList({{9, 1.0}});
    }
    double rec_score(ItemId, const History&, CallMeter& meter) const override {
      meter.charge_metric();
      return 0.5;
    }
  };

  RatingsDataset ds = fixtures::four_user_matrix();
  Group g = fixtures::group12(ds);
  StickyRecommender rec;
  CallMeter meter = CallMeter::unlimited();
  auto vectors = build_metric_vectors(ds, rec, g, 9, meter);

  SearchContext ctx{ds, rec, g, 9, 10, meter, Method::ParetoFiltering, nullptr};
  std::vector<ParetoIterationRecord> diag;
  auto result = pareto_filtering(ctx, vectors, 25, &diag);
  CHECK(!result.has_value());
  // The relaxation reached the full union and then gave up, well before
  // the iteration cap.
  CHECK(!diag.empty());
  CHECK(diag.back().pareto_size == g.union_items().size());
  CHECK(diag.size() < 25);
}
