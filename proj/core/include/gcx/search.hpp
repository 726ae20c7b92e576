#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gcx/dataset.hpp"
#include "gcx/metrics.hpp"
#include "gcx/recommender.hpp"

namespace gcx {

enum class Method {
  GreedyGrow,
  GrowPrune,
  ExpRebuild,
  FixedWindow,
  FixedWindowGreedyGrow,
  FixedWindowGrowPrune,
  ParetoFiltering,
  Exhaustive,
};

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

/// One record per counterfactual probe, in call order. rank_of_target is
/// 0 when the target left the list.
struct TraceRecord {
  int step = 0;
  Method method = Method::GreedyGrow;
  int set_size = 0;
  bool cf_found = false;
  int rank_of_target = 0;
};

using Trace = std::vector<TraceRecord>;

struct ScoredItem {
  ItemId item;
  double score;
  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Candidate items sorted by total score descending, ties by ascending
/// item id.
using CandidateList = std::vector<ScoredItem>;

CandidateList make_candidate_list(std::span<const ItemMetricVector> vectors);

/// Candidate list restricted to `subset` (sorted ascending).
CandidateList make_candidate_list(std::span<const ItemMetricVector> vectors,
                                  std::span<const ItemId> subset);

/// Everything a search strategy needs: the dataset, the black-box
/// recommender, the group under explanation, the target item, the
/// configured list length and the run's call meter. One context per run;
/// not shared across threads.
struct SearchContext {
  const RatingsDataset& ds;
  const GroupRecommender& rec;
  const Group& group;
  ItemId target;
  int list_length;
  CallMeter& meter;
  Method method = Method::GreedyGrow;
  Trace* trace = nullptr;
};

/// True iff removing `removed` (sorted ascending, drawn from the group's
/// union) from every member's history evicts the target from the top-m
/// list. Exactly one search call.
bool is_counterfactual(SearchContext& ctx, std::span<const ItemId> removed);

/// Same probe, additionally returning the explanatory power of the
/// resulting list. Exactly one search call.
std::pair<bool, double> check_cf_and_power(SearchContext& ctx, std::span<const ItemId> removed);

/// Grows a removal set one top-ranked candidate at a time and returns the
/// first prefix that is a counterfactual (items sorted ascending), or
/// nullopt when the whole list fails.
std::optional<std::vector<ItemId>> greedy_grow(SearchContext& ctx, const CandidateList& candidates);

/// greedy_grow followed by backward elimination: items are revisited in
/// ascending score order and dropped whenever the reduced set still
/// verifies. Never larger than the grow-phase result.
std::optional<std::vector<ItemId>> grow_and_prune(SearchContext& ctx,
                                                  const CandidateList& candidates);

struct ExpRebuildOptions {
  /// Probe every rebuild prefix even when it is contained in the grow set
  /// minus its last item (those probes are skipped by default).
  bool always_check = false;
};

/// Grow phase that attributes explanatory power to each added item, then a
/// rebuild pass that regrows in descending attributed-power order.
std::optional<std::vector<ItemId>> exp_rebuild(SearchContext& ctx, const CandidateList& candidates,
                                               ExpRebuildOptions options = {});

struct FixedWindowResult {
  std::vector<ItemId> items;   // sorted ascending
  std::vector<ItemId> window;  // successful window, candidate order
};

/// Slides windows of size w, 2w, ... (final pass clamped to the whole
/// list) over the candidates; the first counterfactual window is refined
/// by enumerating its non-empty subsets in increasing cardinality,
/// lexicographic by window position.
std::optional<FixedWindowResult> fixed_window(SearchContext& ctx, const CandidateList& candidates,
                                              int initial_window);

enum class WindowRefiner { GreedyGrow, GrowPrune };

/// fixed_window with the powerset refinement replaced by the named
/// strategy restricted to the successful window.
std::optional<FixedWindowResult> fixed_window_hybrid(SearchContext& ctx,
                                                     const CandidateList& candidates,
                                                     int initial_window, WindowRefiner refiner);

/// Ground-truth minimum-cardinality counterfactual by subset enumeration
/// (increasing cardinality, lexicographic). Refuses unions larger than 20
/// items. Intended as a test oracle and for single-query inspection.
std::optional<std::vector<ItemId>> exhaustive_minimal(SearchContext& ctx);

}  // namespace gcx
