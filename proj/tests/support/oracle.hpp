#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is written as plain brute force over dense maps and must
// stay decoupled from the production code paths it validates.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <gcx/dataset.hpp>
#include <gcx/pareto.hpp>

namespace oracle {

using Profile = std::map<gcx::ItemId, double>;  // item -> normalized rating

struct Ratings {
  std::map<gcx::UserId, Profile> by_user;
};

/// Dense snapshot taken through the dataset's public read API.
Ratings snapshot(const gcx::RatingsDataset& ds);

double cosine(const Profile& a, const Profile& b);

/// Top-k users by cosine similarity to the profile (similarity > 0, ties
/// by ascending user id).
std::vector<std::pair<gcx::UserId, double>> top_neighbors(const Ratings& r,
                                                          const Profile& profile, int k);

/// Similarity-weighted average of the neighbors' ratings of `item`,
/// absent ratings counting as zero; 0 when there is no neighbor.
double predict_item(const Ratings& r, const Profile& profile, gcx::ItemId item, int k);

/// All predictable items for the profile (rated by at least one selected
/// neighbor, not already in the profile).
Profile predict_all(const Ratings& r, const Profile& profile, int k);

/// Group list: per-member predictions averaged over all members, items in
/// any member profile excluded, sorted by score descending then item id,
/// truncated to m.
std::vector<std::pair<gcx::ItemId, double>> group_list(
    const Ratings& r, const std::vector<Profile>& member_profiles, int m, int k);

/// True iff removing `removed` from every member profile leaves `target`
/// outside the resulting top-m list.
bool removal_evicts(const Ratings& r, const std::vector<Profile>& member_profiles,
                    const std::set<gcx::ItemId>& removed, gcx::ItemId target, int m, int k);

/// Smallest counterfactual by exhaustive enumeration over the union of
/// member profiles (increasing cardinality, lexicographic).
std::optional<std::set<gcx::ItemId>> minimal_counterfactual(
    const Ratings& r, const std::vector<Profile>& member_profiles, gcx::ItemId target, int m,
    int k);

/// Quadratic scan: p survives iff no q satisfies
/// (for all w: q_w >= p_w - tau_w) and (exists j: q_j > p_j).
std::vector<gcx::MetricPoint> brute_pareto(const std::vector<gcx::MetricPoint>& points,
                                           const std::vector<double>& tau);

}  // namespace oracle
