#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gcx/dataset.hpp"
#include "gcx/types.hpp"

namespace gcx {

/// Counts recommender invocations against an optional budget. Search
/// calls (full list generation) and metric calls (single-item score
/// probes) are tracked separately; whether metric calls consume budget
/// is a construction-time policy.
class CallMeter {
 public:
  /// No budget; counters only.
  CallMeter() = default;

  CallMeter(long long budget, bool metric_calls_in_budget)
      : budget_(budget), metric_in_budget_(metric_calls_in_budget) {
    if (budget < 0) throw ValidationError("budget must be non-negative");
  }

  static CallMeter unlimited() { return CallMeter(); }

  void charge_search() {
    if (budget_ && budgeted() + 1 > *budget_) throw BudgetExhausted();
    ++search_calls_;
  }

  void charge_metric() {
    if (budget_ && metric_in_budget_ && budgeted() + 1 > *budget_) throw BudgetExhausted();
    ++metric_calls_;
  }

  long long search_calls() const { return search_calls_; }
  long long metric_calls() const { return metric_calls_; }
  long long calls_used() const { return search_calls_ + metric_calls_; }
  std::optional<long long> budget() const { return budget_; }

 private:
  long long budgeted() const { return search_calls_ + (metric_in_budget_ ? metric_calls_ : 0); }

  long long search_calls_ = 0;
  long long metric_calls_ = 0;
  std::optional<long long> budget_;
  bool metric_in_budget_ = false;
};

struct RecEntry {
  ItemId item;
  double score;
  friend bool operator==(const RecEntry&, const RecEntry&) = default;
};

/// Ranked recommendation output. Scores are non-increasing with rank and
/// no entry belongs to the interaction set the list was generated from.
class RecommendationList {
 public:
  RecommendationList() = default;
  explicit RecommendationList(std::vector<RecEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<RecEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// 1-based rank of an item, 0 when absent.
  int rank_of(ItemId i) const;
  bool contains(ItemId i) const { return rank_of(i) > 0; }

  /// Item at 1-based rank (rank must be in [1, size()]).
  ItemId item_at(int rank) const { return entries_.at(rank - 1).item; }
  double score_at(int rank) const { return entries_.at(rank - 1).score; }

  friend bool operator==(const RecommendationList&, const RecommendationList&) = default;

 private:
  std::vector<RecEntry> entries_;
};

/// A pseudo-user profile: (item, rating) pairs sorted by item id.
using History = std::vector<ItemRating>;

/// Full profile of user u, ratings taken from the dataset.
History history_of(const RatingsDataset& ds, UserId u);

/// Profile of u with the given items deleted (`removed` sorted ascending).
History history_without(const RatingsDataset& ds, UserId u, std::span<const ItemId> removed);

/// Per-member interaction rows fed to the group recommender.
struct GroupInteractions {
  std::vector<UserId> members;
  std::vector<History> histories;  // parallel to members

  /// Sorted union of all history items.
  std::vector<ItemId> item_union() const;
};

GroupInteractions group_interactions(const RatingsDataset& ds, const Group& group);

/// Group interactions with `removed` (sorted ascending) deleted from every
/// member's row.
GroupInteractions group_interactions_without(const RatingsDataset& ds, const Group& group,
                                             std::span<const ItemId> removed);

/// User-based collaborative-filtering prediction for one pseudo-user.
/// Cosine similarity against every dataset user selects the top
/// `k_neighbors` (similarity > 0, ties broken by ascending user id);
/// each candidate item's score is the similarity-weighted average of the
/// neighbors' ratings with absent ratings contributing zero. Items already
/// in the history are excluded. Scores lie in [0, 1]; items no neighbor
/// rated are omitted, so an empty map means no neighbor overlap at all.
std::vector<ItemRating> predict_user_scores(const RatingsDataset& ds, const History& history,
                                            int k_neighbors);

/// Black-box group recommender interface. Implementations must be pure:
/// identical inputs yield identical lists, and the only observable side
/// effect is the meter charge.
class GroupRecommender {
 public:
  virtual ~GroupRecommender() = default;

  /// Produces the top-m list for the given interaction rows. Costs one
  /// search call. Entries never overlap the input interactions; ties
  /// break by ascending item id.
  virtual RecommendationList recommend(const GroupInteractions& interactions, int m,
                                       CallMeter& meter) const = 0;

  /// Recommendation score of `target` for a pseudo-user with exactly
  /// `history` as profile. Costs one metric call. Returns 0 when no
  /// neighbor overlap exists.
  virtual double rec_score(ItemId target, const History& history, CallMeter& meter) const = 0;
};

/// Baseline: user-based CF per member + average aggregation across members.
class CfRecommender final : public GroupRecommender {
 public:
  explicit CfRecommender(const RatingsDataset& ds, int k_neighbors = 50);

  RecommendationList recommend(const GroupInteractions& interactions, int m,
                               CallMeter& meter) const override;
  double rec_score(ItemId target, const History& history, CallMeter& meter) const override;

  int k_neighbors() const { return k_neighbors_; }

 private:
  const RatingsDataset* ds_;
  int k_neighbors_;
};

}  // namespace gcx
