#include "gcx/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace gcx {

int RecommendationList::rank_of(ItemId i) const {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].item == i) return static_cast<int>(k) + 1;
  }
  return 0;
}

History history_of(const RatingsDataset& ds, UserId u) {
  auto row = ds.items_of(u);
  return History(row.begin(), row.end());
}

History history_without(const RatingsDataset& ds, UserId u, std::span<const ItemId> removed) {
  History out;
  for (const auto& r : ds.items_of(u)) {
    if (!std::binary_search(removed.begin(), removed.end(), r.item)) out.push_back(r);
  }
  return out;
}

std::vector<ItemId> GroupInteractions::item_union() const {
  std::vector<ItemId> all;
  for (const auto& h : histories) {
    for (const auto& r : h) all.push_back(r.item);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

GroupInteractions group_interactions(const RatingsDataset& ds, const Group& group) {
  GroupInteractions gi;
  gi.members = group.members();
  gi.histories.reserve(gi.members.size());
  for (UserId u : gi.members) gi.histories.push_back(history_of(ds, u));
  return gi;
}

GroupInteractions group_interactions_without(const RatingsDataset& ds, const Group& group,
                                             std::span<const ItemId> removed) {
  GroupInteractions gi;
  gi.members = group.members();
  gi.histories.reserve(gi.members.size());
  for (UserId u : gi.members) gi.histories.push_back(history_without(ds, u, removed));
  return gi;
}

namespace {

struct Neighbor {
  UserId user;
  double similarity;
};

// Top-k users by cosine similarity to the pseudo-profile, similarity > 0,
// ties broken by ascending user id.
std::vector<Neighbor> top_neighbors(const RatingsDataset& ds, const History& history,
                                    int k_neighbors) {
  if (history.empty() || k_neighbors < 1) return {};

  double sq = 0.0;
  for (const auto& r : history) sq += r.value * r.value;
  const double history_norm = std::sqrt(sq);
  if (history_norm == 0.0) return {};

  std::unordered_map<UserId, double> dots;
  for (const auto& r : history) {
    for (const auto& ur : ds.raters_of(r.item)) dots[ur.user] += r.value * ur.value;
  }

  std::vector<Neighbor> sims;
  sims.reserve(dots.size());
  for (const auto& [user, dot] : dots) {
    if (dot <= 0.0) continue;
    double sim = dot / (history_norm * ds.user_norm(user));
    if (sim > 0.0) sims.push_back({user, sim});
  }
  auto by_similarity = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.user < b.user;
  };
  if (sims.size() > static_cast<std::size_t>(k_neighbors)) {
    std::nth_element(sims.begin(), sims.begin() + k_neighbors, sims.end(), by_similarity);
    sims.resize(k_neighbors);
  }
  std::sort(sims.begin(), sims.end(), by_similarity);
  return sims;
}

bool in_history(const History& history, ItemId item) {
  auto it = std::lower_bound(history.begin(), history.end(), item,
                             [](const ItemRating& r, ItemId id) { return r.item < id; });
  return it != history.end() && it->item == item;
}

}  // namespace

std::vector<ItemRating> predict_user_scores(const RatingsDataset& ds, const History& history,
                                            int k_neighbors) {
  std::vector<Neighbor> neighbors = top_neighbors(ds, history, k_neighbors);
  if (neighbors.empty()) return {};

  double sim_sum = 0.0;
  for (const auto& n : neighbors) sim_sum += n.similarity;

  std::unordered_map<ItemId, double> weighted;
  for (const auto& n : neighbors) {
    for (const auto& r : ds.items_of(n.user)) {
      if (in_history(history, r.item)) continue;
      weighted[r.item] += n.similarity * r.value;
    }
  }

  std::vector<ItemRating> scores;
  scores.reserve(weighted.size());
  for (const auto& [item, sum] : weighted) scores.push_back({item, sum / sim_sum});
  std::sort(scores.begin(), scores.end(),
            [](const ItemRating& a, const ItemRating& b) { return a.item < b.item; });
  return scores;
}

CfRecommender::CfRecommender(const RatingsDataset& ds, int k_neighbors)
    : ds_(&ds), k_neighbors_(k_neighbors) {
  if (k_neighbors < 1) throw ValidationError("k_neighbors must be >= 1");
}

RecommendationList CfRecommender::recommend(const GroupInteractions& interactions, int m,
                                            CallMeter& meter) const {
  if (m < 1) throw ValidationError("list length must be >= 1");
  meter.charge_search();

  const std::vector<ItemId> excluded = interactions.item_union();
  std::unordered_map<ItemId, double> sums;
  for (const auto& history : interactions.histories) {
    for (const auto& s : predict_user_scores(*ds_, history, k_neighbors_)) {
      if (std::binary_search(excluded.begin(), excluded.end(), s.item)) continue;
      sums[s.item] += s.value;
    }
  }
  if (sums.empty()) return RecommendationList{};

  const double member_count = static_cast<double>(interactions.members.size());
  std::vector<RecEntry> entries;
  entries.reserve(sums.size());
  for (const auto& [item, sum] : sums) entries.push_back({item, sum / member_count});
  std::sort(entries.begin(), entries.end(), [](const RecEntry& a, const RecEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item < b.item;
  });
  if (entries.size() > static_cast<std::size_t>(m)) entries.resize(m);
  return RecommendationList(std::move(entries));
}

double CfRecommender::rec_score(ItemId target, const History& history, CallMeter& meter) const {
  if (in_history(history, target)) {
    throw ValidationError("rec_score target is part of the history");
  }
  meter.charge_metric();

  std::vector<Neighbor> neighbors = top_neighbors(*ds_, history, k_neighbors_);
  if (neighbors.empty()) return 0.0;
  double sim_sum = 0.0;
  double weighted = 0.0;
  for (const auto& n : neighbors) {
    sim_sum += n.similarity;
    weighted += n.similarity * ds_->rating(n.user, target);
  }
  return weighted / sim_sum;
}

}  // namespace gcx
