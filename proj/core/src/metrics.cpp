#include "gcx/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace gcx {

double item_recognition(const RatingsDataset& ds, ItemId i, std::span<const UserId> users) {
  if (users.empty()) throw ValidationError("item_recognition over an empty user set");
  std::size_t count = 0;
  for (UserId u : users) {
    if (ds.interacted(u, i)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(users.size());
}

double item_rating(const RatingsDataset& ds, ItemId i, std::span<const UserId> users) {
  if (users.empty()) throw ValidationError("item_rating over an empty user set");
  double sum = 0.0;
  for (UserId u : users) sum += ds.rating(u, i);
  return sum / static_cast<double>(users.size());
}

double public_item_recognition(const RatingsDataset& ds, ItemId i, const Group& group) {
  const std::size_t outside = ds.user_count() - group.size();
  if (outside == 0) return 0.0;
  std::size_t count = 0;
  for (const auto& ur : ds.raters_of(i)) {
    if (!group.is_member(ur.user)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(outside);
}

double public_item_rating(const RatingsDataset& ds, ItemId i, const Group& group) {
  const std::size_t outside = ds.user_count() - group.size();
  if (outside == 0) return 0.0;
  double sum = 0.0;
  for (const auto& ur : ds.raters_of(i)) {
    if (!group.is_member(ur.user)) sum += ur.value;
  }
  return sum / static_cast<double>(outside);
}

double item_influence(const RatingsDataset& ds, const GroupRecommender& rec, ItemId i,
                      ItemId target, const Group& group, CallMeter& meter) {
  double sum = 0.0;
  std::size_t contributors = 0;
  for (std::size_t k = 0; k < group.size(); ++k) {
    const auto& items = group.member_items(k);
    if (!std::binary_search(items.begin(), items.end(), i)) continue;
    sum += rec.rec_score(target, history_of(ds, group.members()[k]), meter);
    ++contributors;
  }
  if (contributors == 0) return 0.0;
  return sum / static_cast<double>(contributors);
}

double explanatory_power(const RecommendationList& list, ItemId target, int list_length) {
  if (list_length < 1) throw ValidationError("list length must be >= 1");
  const int rank = list.rank_of(target);
  if (rank == 0) return 1.0;
  return std::min(static_cast<double>(rank - 1) / static_cast<double>(list_length), 1.0);
}

std::vector<ItemMetricVector> build_metric_vectors(const RatingsDataset& ds,
                                                   const GroupRecommender& rec,
                                                   const Group& group, ItemId target,
                                                   CallMeter& meter) {
  // One rec_score per member covers the influence component for every item.
  std::vector<double> member_target_score(group.size(), 0.0);
  for (std::size_t k = 0; k < group.size(); ++k) {
    member_target_score[k] =
        rec.rec_score(target, history_of(ds, group.members()[k]), meter);
  }

  std::vector<ItemMetricVector> out;
  out.reserve(group.union_items().size());
  for (ItemId i : group.union_items()) {
    ItemMetricVector v;
    v.item = i;
    v.rc_group = item_recognition(ds, i, group.members());
    v.rc_public = public_item_recognition(ds, i, group);
    v.rt_group = item_rating(ds, i, group.members());
    v.rt_public = public_item_rating(ds, i, group);

    double sum = 0.0;
    std::size_t contributors = 0;
    for (std::size_t k = 0; k < group.size(); ++k) {
      const auto& items = group.member_items(k);
      if (std::binary_search(items.begin(), items.end(), i)) {
        sum += member_target_score[k];
        ++contributors;
      }
    }
    v.influence = contributors == 0 ? 0.0 : sum / static_cast<double>(contributors);
    v.total_score = v.rc_group + v.rc_public + v.rt_group + v.rt_public + v.influence;
    out.push_back(v);
  }
  return out;
}

void write_metric_csv(std::ostream& out, std::span<const ItemMetricVector> vectors) {
  out << "item,rc_g,rc_p,rt_g,rt_p,infl,total\n";
  for (const auto& v : vectors) {
    out << v.item << ',' << v.rc_group << ',' << v.rc_public << ',' << v.rt_group << ','
        << v.rt_public << ',' << v.influence << ',' << v.total_score << '\n';
  }
}

}  // namespace gcx
