#include "gcx/search.hpp"

#include <algorithm>
#include <unordered_map>

namespace gcx {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::GreedyGrow: return "GreedyGrow";
    case Method::GrowPrune: return "GrowPrune";
    case Method::ExpRebuild: return "ExpRebuild";
    case Method::FixedWindow: return "FixedWindow";
    case Method::FixedWindowGreedyGrow: return "FixedWindowGreedyGrow";
    case Method::FixedWindowGrowPrune: return "FixedWindowGrowPrune";
    case Method::ParetoFiltering: return "ParetoFiltering";
    case Method::Exhaustive: return "Exhaustive";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::GreedyGrow, Method::GrowPrune, Method::ExpRebuild, Method::FixedWindow,
                   Method::FixedWindowGreedyGrow, Method::FixedWindowGrowPrune,
                   Method::ParetoFiltering, Method::Exhaustive}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

bool score_order(const ScoredItem& a, const ScoredItem& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.item < b.item;
}

std::vector<ItemId> sorted_items(std::vector<ItemId> items) {
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace

CandidateList make_candidate_list(std::span<const ItemMetricVector> vectors) {
  CandidateList out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back({v.item, v.total_score});
  std::sort(out.begin(), out.end(), score_order);
  return out;
}

CandidateList make_candidate_list(std::span<const ItemMetricVector> vectors,
                                  std::span<const ItemId> subset) {
  CandidateList out;
  out.reserve(subset.size());
  for (const auto& v : vectors) {
    if (std::binary_search(subset.begin(), subset.end(), v.item)) {
      out.push_back({v.item, v.total_score});
    }
  }
  std::sort(out.begin(), out.end(), score_order);
  return out;
}

bool is_counterfactual(SearchContext& ctx, std::span<const ItemId> removed) {
  return check_cf_and_power(ctx, removed).first;
}

std::pair<bool, double> check_cf_and_power(SearchContext& ctx, std::span<const ItemId> removed) {
  RecommendationList list = ctx.rec.recommend(
      group_interactions_without(ctx.ds, ctx.group, removed), ctx.list_length, ctx.meter);
  const int rank = list.rank_of(ctx.target);
  const bool found = rank == 0;
  if (ctx.trace) {
    ctx.trace->push_back({static_cast<int>(ctx.trace->size()) + 1, ctx.method,
                          static_cast<int>(removed.size()), found, rank});
  }
  return {found, explanatory_power(list, ctx.target, ctx.list_length)};
}

namespace {

// Shared grow phase: add candidates in rank order until the removal set
// verifies. Returns the number of items taken, or nullopt on failure.
std::optional<std::size_t> grow_prefix(SearchContext& ctx, const CandidateList& candidates) {
  std::vector<ItemId> removal;
  removal.reserve(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    removal.insert(std::lower_bound(removal.begin(), removal.end(), candidates[j].item),
                   candidates[j].item);
    if (is_counterfactual(ctx, removal)) return j + 1;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<ItemId>> greedy_grow(SearchContext& ctx,
                                               const CandidateList& candidates) {
  auto taken = grow_prefix(ctx, candidates);
  if (!taken) return std::nullopt;
  std::vector<ItemId> items;
  items.reserve(*taken);
  for (std::size_t j = 0; j < *taken; ++j) items.push_back(candidates[j].item);
  return sorted_items(std::move(items));
}

std::optional<std::vector<ItemId>> grow_and_prune(SearchContext& ctx,
                                                  const CandidateList& candidates) {
  auto taken = grow_prefix(ctx, candidates);
  if (!taken) return std::nullopt;

  // Revisit in ascending score order (exact reverse of the grow order).
  std::vector<ItemId> kept;
  kept.reserve(*taken);
  for (std::size_t j = 0; j < *taken; ++j) kept.push_back(candidates[j].item);
  std::sort(kept.begin(), kept.end());

  for (std::size_t r = *taken; r-- > 0;) {
    const ItemId candidate = candidates[r].item;
    std::vector<ItemId> reduced;
    reduced.reserve(kept.size() - 1);
    for (ItemId item : kept) {
      if (item != candidate) reduced.push_back(item);
    }
    if (reduced.size() == kept.size()) continue;  // already pruned
    if (is_counterfactual(ctx, reduced)) kept = std::move(reduced);
  }
  return kept;
}

std::optional<std::vector<ItemId>> exp_rebuild(SearchContext& ctx, const CandidateList& candidates,
                                               ExpRebuildOptions options) {
  std::vector<ItemId> removal;
  std::unordered_map<ItemId, double> attributed_power;
  std::size_t taken = 0;
  bool found = false;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    removal.insert(std::lower_bound(removal.begin(), removal.end(), candidates[j].item),
                   candidates[j].item);
    auto [cf, power] = check_cf_and_power(ctx, removal);
    attributed_power[candidates[j].item] = power / static_cast<double>(removal.size());
    if (cf) {
      taken = j + 1;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  // Grow set minus its last item: rebuild prefixes contained in it were
  // already ruled out by the grow scan.
  std::vector<ItemId> checked_prefix;
  for (std::size_t j = 0; j + 1 < taken; ++j) checked_prefix.push_back(candidates[j].item);
  std::sort(checked_prefix.begin(), checked_prefix.end());

  std::vector<ItemId> by_power;
  for (std::size_t j = 0; j < taken; ++j) by_power.push_back(candidates[j].item);
  std::stable_sort(by_power.begin(), by_power.end(), [&](ItemId a, ItemId b) {
    return attributed_power[a] > attributed_power[b];
  });

  std::vector<ItemId> rebuilt;
  for (ItemId item : by_power) {
    rebuilt.insert(std::lower_bound(rebuilt.begin(), rebuilt.end(), item), item);
    const bool contained = std::includes(checked_prefix.begin(), checked_prefix.end(),
                                         rebuilt.begin(), rebuilt.end());
    if (contained && !options.always_check) continue;
    if (is_counterfactual(ctx, rebuilt)) return rebuilt;
  }

  // Every strict rebuild prefix failed; the grow-phase set itself stands.
  std::vector<ItemId> grown;
  for (std::size_t j = 0; j < taken; ++j) grown.push_back(candidates[j].item);
  return sorted_items(std::move(grown));
}

namespace {

// Subsets of the window in increasing cardinality, lexicographic by window
// position within each cardinality class. Returns the first verifying
// subset; the full window is enumerated last and must verify by purity.
std::optional<std::vector<ItemId>> refine_by_powerset(SearchContext& ctx,
                                                      std::span<const ScoredItem> window) {
  const std::size_t n = window.size();
  for (std::size_t card = 1; card <= n; ++card) {
    std::vector<std::size_t> index(card);
    for (std::size_t k = 0; k < card; ++k) index[k] = k;
    for (;;) {
      std::vector<ItemId> subset;
      subset.reserve(card);
      for (std::size_t k : index) subset.push_back(window[k].item);
      std::sort(subset.begin(), subset.end());
      if (is_counterfactual(ctx, subset)) return subset;

      std::size_t k = card;
      bool advanced = false;
      while (k-- > 0) {
        if (index[k] + (card - k) < n) {
          ++index[k];
          for (std::size_t j = k + 1; j < card; ++j) index[j] = index[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

template <typename Refine>
std::optional<FixedWindowResult> window_scan(SearchContext& ctx, const CandidateList& candidates,
                                             int initial_window, Refine refine) {
  if (initial_window < 1) throw ValidationError("window size must be >= 1");
  if (candidates.empty()) return std::nullopt;

  const std::size_t n = candidates.size();
  const std::size_t w = static_cast<std::size_t>(initial_window);
  for (std::size_t w_cur = w;; w_cur += w) {
    const std::size_t size = std::min(w_cur, n);
    for (std::size_t start = 0; start + size <= n; ++start) {
      std::span<const ScoredItem> window(candidates.data() + start, size);
      std::vector<ItemId> window_items;
      window_items.reserve(size);
      for (const auto& s : window) window_items.push_back(s.item);
      std::vector<ItemId> window_sorted = window_items;
      std::sort(window_sorted.begin(), window_sorted.end());

      if (!is_counterfactual(ctx, window_sorted)) continue;

      std::optional<std::vector<ItemId>> refined = refine(window);
      FixedWindowResult result;
      result.items = refined ? std::move(*refined) : std::move(window_sorted);
      result.window = std::move(window_items);
      return result;
    }
    if (size == n) break;  // the whole list was examined as one window
  }
  return std::nullopt;
}

}  // namespace

std::optional<FixedWindowResult> fixed_window(SearchContext& ctx, const CandidateList& candidates,
                                              int initial_window) {
  return window_scan(ctx, candidates, initial_window,
                     [&](std::span<const ScoredItem> window) {
                       return refine_by_powerset(ctx, window);
                     });
}

std::optional<FixedWindowResult> fixed_window_hybrid(SearchContext& ctx,
                                                     const CandidateList& candidates,
                                                     int initial_window, WindowRefiner refiner) {
  return window_scan(ctx, candidates, initial_window,
                     [&](std::span<const ScoredItem> window) {
                       CandidateList local(window.begin(), window.end());
                       return refiner == WindowRefiner::GreedyGrow ? greedy_grow(ctx, local)
                                                                   : grow_and_prune(ctx, local);
                     });
}

std::optional<std::vector<ItemId>> exhaustive_minimal(SearchContext& ctx) {
  const std::vector<ItemId>& pool = ctx.group.union_items();
  const std::size_t n = pool.size();
  if (n > 20) {
    throw ConfigError("exhaustive search refused: union has " + std::to_string(n) +
                      " items (limit 20)");
  }
  for (std::size_t card = 1; card <= n; ++card) {
    std::vector<std::size_t> index(card);
    for (std::size_t k = 0; k < card; ++k) index[k] = k;
    for (;;) {
      std::vector<ItemId> subset;
      subset.reserve(card);
      for (std::size_t k : index) subset.push_back(pool[k]);  // pool is sorted
      if (is_counterfactual(ctx, subset)) return subset;

      std::size_t k = card;
      bool advanced = false;
      while (k-- > 0) {
        if (index[k] + (card - k) < n) {
          ++index[k];
          for (std::size_t j = k + 1; j < card; ++j) index[j] = index[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

}  // namespace gcx
