#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gcx/eval.hpp"
#include "gcx/pareto.hpp"
#include "gcx/search.hpp"

namespace gcx {

/// A verified counterfactual explanation together with the cost of
/// discovering it.
struct Explanation {
  std::vector<ItemId> items;  // sorted ascending, non-empty
  Method method = Method::GreedyGrow;
  long long search_calls = 0;  // full-list probes consumed by the run
  long long metric_calls = 0;  // score probes consumed building metrics
  bool valid = false;          // re-verified with a fresh unmetered call
  std::vector<int> member_contributions;  // parallel to group members
  std::vector<ItemId> window;  // successful window for window methods
};

enum class SearchStatus { Found, NotFound, BudgetExhausted };

/// Result of one search run. On failure the explanation is absent and the
/// call counters carry the partial cost.
struct SearchOutcome {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<Explanation> explanation;
  long long search_calls = 0;
  long long metric_calls = 0;
  Trace trace;  // populated when record_trace was set
};

struct SearchOptions {
  Method method = Method::GreedyGrow;
  bool pareto_preprocess = false;  // run the filter first and search inside its result
  int list_length = 10;
  int window = 15;
  int max_pareto_iterations = 25;
  std::optional<long long> budget;  // search-call budget; nullopt = unlimited
  bool count_metric_calls_in_budget = false;
  bool record_trace = false;
  ExpRebuildOptions exp_rebuild{};
};

/// Recommendation list for the group's unmodified interactions. Costs
/// nothing against any run meter.
RecommendationList factual_list(const RatingsDataset& ds, const GroupRecommender& rec,
                                const Group& group, int list_length);

/// Fresh unmetered probe that the removal truly evicts the target.
bool verify_explanation(const RatingsDataset& ds, const GroupRecommender& rec, const Group& group,
                        std::span<const ItemId> items, ItemId target, int list_length);

/// Runs one strategy end to end: builds metric vectors, optionally applies
/// the search-space filter, dispatches the method, then re-verifies and
/// annotates the result. The target must come from the factual list.
SearchOutcome run_search(const RatingsDataset& ds, const GroupRecommender& rec, const Group& group,
                         ItemId target, const SearchOptions& options);

}  // namespace gcx
