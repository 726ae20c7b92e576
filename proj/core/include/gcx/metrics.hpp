#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "gcx/dataset.hpp"
#include "gcx/recommender.hpp"

namespace gcx {

/// The five per-item signals that drive candidate ranking, plus their sum.
/// Every component lies in [0, 1], so the total lies in [0, 5].
struct ItemMetricVector {
  ItemId item = 0;
  double rc_group = 0.0;    // recognition among group members
  double rc_public = 0.0;   // recognition among all other users
  double rt_group = 0.0;    // mean rating by group members
  double rt_public = 0.0;   // mean rating by all other users
  double influence = 0.0;   // mean member score of the target, see item_influence
  double total_score = 0.0; // sum of the five components

  friend bool operator==(const ItemMetricVector&, const ItemMetricVector&) = default;
};

/// Fraction of `users` that interacted with item i. `users` must be
/// non-empty.
double item_recognition(const RatingsDataset& ds, ItemId i, std::span<const UserId> users);

/// Mean rating of i over `users`, absent ratings counting as zero.
/// `users` must be non-empty.
double item_rating(const RatingsDataset& ds, ItemId i, std::span<const UserId> users);

/// item_recognition over all users outside the group, computed from the
/// item's rater index rather than a materialized complement. Returns 0
/// when the group covers the whole user base.
double public_item_recognition(const RatingsDataset& ds, ItemId i, const Group& group);

/// item_rating over all users outside the group; same conventions.
double public_item_rating(const RatingsDataset& ds, ItemId i, const Group& group);

/// Influence of item i on the target: the mean rec_score of the target
/// over group members who interacted with i (their full profiles), or 0
/// when no member did. Issues one metric call per contributing member.
double item_influence(const RatingsDataset& ds, const GroupRecommender& rec, ItemId i,
                      ItemId target, const Group& group, CallMeter& meter);

/// Normalized degraded rank of the target in a post-removal list:
/// 1 when the target is gone, else min((rank - 1) / list_length, 1).
double explanatory_power(const RecommendationList& list, ItemId target, int list_length);

/// One metric vector per item of the group's interaction union, sorted by
/// item id. The influence component reuses one rec_score per member
/// (the score depends only on the member's profile), so exactly |G|
/// metric calls are issued regardless of the union size.
std::vector<ItemMetricVector> build_metric_vectors(const RatingsDataset& ds,
                                                   const GroupRecommender& rec,
                                                   const Group& group, ItemId target,
                                                   CallMeter& meter);

/// `item,rc_g,rc_p,rt_g,rt_p,infl,total` rows with a header line.
void write_metric_csv(std::ostream& out, std::span<const ItemMetricVector> vectors);

}  // namespace gcx
