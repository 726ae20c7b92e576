#include <benchmark/benchmark.h>

#include <gcx/driver.hpp>
#include <gcx/pareto.hpp>
#include <gcx/synthetic.hpp>

namespace {

gcx::RatingsDataset& dense_dataset() {
  static gcx::RatingsDataset ds = gcx::generate_synthetic(200, 300, 0.3, 1);
  return ds;
}

std::vector<gcx::MetricPoint> random_points(std::size_t n) {
  std::uint64_t state = 0x853c49e6748fea9bULL;
  auto next_unit = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  std::vector<gcx::MetricPoint> points(n);
  for (std::size_t k = 0; k < n; ++k) {
    points[k].item = static_cast<gcx::ItemId>(k);
    for (int w = 0; w < 5; ++w) points[k].coords.push_back(next_unit());
  }
  return points;
}

void BM_TauParetoSet(benchmark::State& state) {
  auto points = random_points(static_cast<std::size_t>(state.range(0)));
  gcx::ThresholdVector zero(5, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcx::tau_pareto_set(points, zero));
  }
}
BENCHMARK(BM_TauParetoSet)->Arg(50)->Arg(200)->Arg(1000);

void BM_GroupRecommend(benchmark::State& state) {
  const gcx::RatingsDataset& ds = dense_dataset();
  auto eligible = gcx::filter_eligible_users(ds, 30);
  auto groups = gcx::sample_groups(ds, eligible, static_cast<int>(state.range(0)), 1, 7, 30);
  gcx::CfRecommender rec(ds, 50);
  auto interactions = gcx::group_interactions(ds, groups[0]);
  for (auto _ : state) {
    gcx::CallMeter meter = gcx::CallMeter::unlimited();
    benchmark::DoNotOptimize(rec.recommend(interactions, 10, meter));
  }
}
BENCHMARK(BM_GroupRecommend)->Arg(5)->Arg(10);

void BM_GreedyGrowSearch(benchmark::State& state) {
  const gcx::RatingsDataset& ds = dense_dataset();
  auto eligible = gcx::filter_eligible_users(ds, 30);
  auto groups = gcx::sample_groups(ds, eligible, 5, 1, 11, 30);
  gcx::CfRecommender rec(ds, 50);
  gcx::RecommendationList factual = gcx::factual_list(ds, rec, groups[0], 10);
  if (factual.empty()) {
    state.SkipWithError("empty factual list");
    return;
  }
  gcx::SearchOptions options;
  options.method = gcx::Method::GreedyGrow;
  options.budget = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcx::run_search(ds, rec, groups[0], factual.item_at(1), options));
  }
}
BENCHMARK(BM_GreedyGrowSearch);

}  // namespace

BENCHMARK_MAIN();
