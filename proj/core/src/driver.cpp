#include "gcx/driver.hpp"

namespace gcx {

RecommendationList factual_list(const RatingsDataset& ds, const GroupRecommender& rec,
                                const Group& group, int list_length) {
  CallMeter meter = CallMeter::unlimited();
  return rec.recommend(group_interactions(ds, group), list_length, meter);
}

bool verify_explanation(const RatingsDataset& ds, const GroupRecommender& rec, const Group& group,
                        std::span<const ItemId> items, ItemId target, int list_length) {
  CallMeter meter = CallMeter::unlimited();
  RecommendationList list =
      rec.recommend(group_interactions_without(ds, group, items), list_length, meter);
  return !list.contains(target);
}

namespace {

std::optional<std::vector<ItemId>> dispatch(SearchContext& ctx, const SearchOptions& options,
                                            const CandidateList& candidates,
                                            std::span<const ItemMetricVector> vectors,
                                            std::vector<ItemId>* window_out) {
  switch (options.method) {
    case Method::GreedyGrow:
      return greedy_grow(ctx, candidates);
    case Method::GrowPrune:
      return grow_and_prune(ctx, candidates);
    case Method::ExpRebuild:
      return exp_rebuild(ctx, candidates, options.exp_rebuild);
    case Method::FixedWindow:
    case Method::FixedWindowGreedyGrow:
    case Method::FixedWindowGrowPrune: {
      std::optional<FixedWindowResult> result;
      if (options.method == Method::FixedWindow) {
        result = fixed_window(ctx, candidates, options.window);
      } else {
        const WindowRefiner refiner = options.method == Method::FixedWindowGreedyGrow
                                          ? WindowRefiner::GreedyGrow
                                          : WindowRefiner::GrowPrune;
        result = fixed_window_hybrid(ctx, candidates, options.window, refiner);
      }
      if (!result) return std::nullopt;
      *window_out = std::move(result->window);
      return std::move(result->items);
    }
    case Method::ParetoFiltering:
      return pareto_filtering(ctx, vectors, options.max_pareto_iterations);
    case Method::Exhaustive:
      return exhaustive_minimal(ctx);
  }
  return std::nullopt;
}

}  // namespace

SearchOutcome run_search(const RatingsDataset& ds, const GroupRecommender& rec, const Group& group,
                         ItemId target, const SearchOptions& options) {
  SearchOutcome outcome;
  CallMeter meter = options.budget
                        ? CallMeter(*options.budget, options.count_metric_calls_in_budget)
                        : CallMeter::unlimited();
  Trace trace;
  SearchContext ctx{ds,
                    rec,
                    group,
                    target,
                    options.list_length,
                    meter,
                    options.method,
                    options.record_trace ? &trace : nullptr};

  try {
    std::vector<ItemMetricVector> vectors;
    CandidateList candidates;
    const bool needs_metrics = options.method != Method::Exhaustive;
    if (needs_metrics) {
      vectors = build_metric_vectors(ds, rec, group, target, meter);
    }

    if (options.pareto_preprocess && options.method != Method::ParetoFiltering &&
        options.method != Method::Exhaustive) {
      auto filtered = pareto_filtering(ctx, vectors, options.max_pareto_iterations);
      if (!filtered) {
        outcome.status = SearchStatus::NotFound;
        outcome.search_calls = meter.search_calls();
        outcome.metric_calls = meter.metric_calls();
        outcome.trace = std::move(trace);
        return outcome;
      }
      candidates = make_candidate_list(vectors, *filtered);
    } else if (needs_metrics) {
      candidates = make_candidate_list(vectors);
    }

    std::vector<ItemId> window;
    auto items = dispatch(ctx, options, candidates, vectors, &window);
    outcome.search_calls = meter.search_calls();
    outcome.metric_calls = meter.metric_calls();
    outcome.trace = std::move(trace);
    if (!items) {
      outcome.status = SearchStatus::NotFound;
      return outcome;
    }

    Explanation explanation;
    explanation.items = std::move(*items);
    explanation.method = options.method;
    explanation.search_calls = outcome.search_calls;
    explanation.metric_calls = outcome.metric_calls;
    explanation.valid =
        verify_explanation(ds, rec, group, explanation.items, target, options.list_length);
    explanation.member_contributions = member_contributions(ds, group, explanation.items);
    explanation.window = std::move(window);
    outcome.status = SearchStatus::Found;
    outcome.explanation = std::move(explanation);
    return outcome;
  } catch (const BudgetExhausted&) {
    outcome.status = SearchStatus::BudgetExhausted;
    outcome.explanation.reset();
    outcome.search_calls = meter.search_calls();
    outcome.metric_calls = meter.metric_calls();
    outcome.trace = std::move(trace);
    return outcome;
  }
}

}  // namespace gcx
