#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcx/types.hpp"

namespace gcx {

struct ItemRating {
  ItemId item;
  double value;
  friend bool operator==(const ItemRating&, const ItemRating&) = default;
};

struct UserRating {
  UserId user;
  double value;
  friend bool operator==(const UserRating&, const UserRating&) = default;
};

/// Immutable sparse user x item rating store. Ratings are normalized to
/// (0, 1] at load time; a missing rating reads back as zero. The per-user
/// and per-item indexes are exact transposes of each other.
///
/// Safe to share across threads once built.
class RatingsDataset {
 public:
  RatingsDataset() = default;

  std::size_t user_count() const { return users_.size(); }
  std::size_t item_count() const { return items_.size(); }
  std::size_t rating_count() const { return rating_count_; }

  /// All user ids, ascending.
  const std::vector<UserId>& users() const { return users_; }
  /// All item ids, ascending.
  const std::vector<ItemId>& items() const { return items_; }

  bool has_user(UserId u) const { return user_pos_.count(u) != 0; }
  bool has_item(ItemId i) const { return item_pos_.count(i) != 0; }

  /// Rating of item i by user u; 0 when absent.
  double rating(UserId u, ItemId i) const;

  /// Interaction indicator: true iff u has rated i.
  bool interacted(UserId u, ItemId i) const { return rating(u, i) > 0.0; }

  /// Items rated by u with their ratings, sorted by item id.
  /// Empty span for unknown users.
  std::span<const ItemRating> items_of(UserId u) const;

  /// Users who rated i with their ratings, sorted by user id.
  std::span<const UserRating> raters_of(ItemId i) const;

  /// Euclidean norm of u's full rating vector (0 for unknown users).
  double user_norm(UserId u) const;

  /// Display label for an interned id; falls back to the numeric id.
  std::string user_label(UserId u) const;
  std::string item_label(ItemId i) const;

  bool operator==(const RatingsDataset& other) const;

 private:
  friend class DatasetBuilder;

  std::vector<UserId> users_;
  std::vector<ItemId> items_;
  std::unordered_map<UserId, std::size_t> user_pos_;
  std::unordered_map<ItemId, std::size_t> item_pos_;
  std::vector<std::vector<ItemRating>> rows_;     // per user, sorted by item
  std::vector<std::vector<UserRating>> columns_;  // per item, sorted by user
  std::vector<double> user_norms_;
  std::vector<std::string> user_labels_;  // empty unless ids were interned
  std::vector<std::string> item_labels_;
  std::size_t rating_count_ = 0;
};

/// Accumulates (user, item, rating) triples and assembles a RatingsDataset.
/// Duplicate (user, item) pairs keep the last occurrence.
class DatasetBuilder {
 public:
  /// Ratings must already be normalized into (0, 1].
  void add(UserId u, ItemId i, double normalized_rating);

  /// Optional display labels for interned identifiers.
  void set_user_label(UserId u, std::string label);
  void set_item_label(ItemId i, std::string label);

  RatingsDataset build();

 private:
  struct Entry {
    UserId user;
    ItemId item;
    double value;
    std::size_t seq;
  };
  std::vector<Entry> entries_;
  std::unordered_map<UserId, std::string> user_labels_;
  std::unordered_map<ItemId, std::string> item_labels_;
};

/// Loads `UserID::MovieID::Rating::Timestamp` lines. Ratings are divided
/// by `rating_scale_max` so stored values lie in (0, 1]; timestamps are
/// discarded. Emits a `users=<n> items=<n> ratings=<n>` stats line on the
/// diagnostics stream (std::clog unless overridden).
RatingsDataset load_movielens(const std::filesystem::path& path, double rating_scale_max,
                              std::ostream* diagnostics = nullptr);

/// Loads `user,item,rating,timestamp` lines. User and item tokens may be
/// arbitrary strings; they are interned in first-occurrence order and the
/// original tokens are kept as labels. Same normalization contract as
/// load_movielens.
RatingsDataset load_amazon(const std::filesystem::path& path, double rating_scale_max,
                           std::ostream* diagnostics = nullptr);

/// Users with at least `min_ratings` interactions, ascending.
std::vector<UserId> filter_eligible_users(const RatingsDataset& ds, int min_ratings);

/// A fixed subset of users together with their interaction sets and the
/// union of those sets.
class Group {
 public:
  /// Validates that members are distinct, exist in the dataset, and carry
  /// at least `min_ratings` interactions each.
  static Group make(const RatingsDataset& ds, std::vector<UserId> members, int min_ratings = 1);

  const std::vector<UserId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  /// Interaction set of the k-th member, sorted by item id.
  const std::vector<ItemId>& member_items(std::size_t k) const { return member_items_[k]; }

  /// Union of all member interaction sets, sorted by item id.
  const std::vector<ItemId>& union_items() const { return union_items_; }

  bool is_member(UserId u) const;

 private:
  std::vector<UserId> members_;
  std::vector<std::vector<ItemId>> member_items_;
  std::vector<ItemId> union_items_;
};

/// Draws `count` groups of `group_size` distinct users uniformly (without
/// replacement within a group) from the eligible pool. Deterministic for a
/// fixed seed, independent of platform.
std::vector<Group> sample_groups(const RatingsDataset& ds, std::span<const UserId> eligible,
                                 int group_size, int count, std::uint64_t seed,
                                 int min_ratings = 1);

}  // namespace gcx
