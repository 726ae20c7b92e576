#include "gcx/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rng.hpp"

namespace gcx {

double RatingsDataset::rating(UserId u, ItemId i) const {
  auto it = user_pos_.find(u);
  if (it == user_pos_.end()) return 0.0;
  const auto& row = rows_[it->second];
  auto pos = std::lower_bound(row.begin(), row.end(), i,
                              [](const ItemRating& r, ItemId id) { return r.item < id; });
  if (pos == row.end() || pos->item != i) return 0.0;
  return pos->value;
}

std::span<const ItemRating> RatingsDataset::items_of(UserId u) const {
  auto it = user_pos_.find(u);
  if (it == user_pos_.end()) return {};
  return rows_[it->second];
}

std::span<const UserRating> RatingsDataset::raters_of(ItemId i) const {
  auto it = item_pos_.find(i);
  if (it == item_pos_.end()) return {};
  return columns_[it->second];
}

double RatingsDataset::user_norm(UserId u) const {
  auto it = user_pos_.find(u);
  if (it == user_pos_.end()) return 0.0;
  return user_norms_[it->second];
}

std::string RatingsDataset::user_label(UserId u) const {
  auto it = user_pos_.find(u);
  if (it != user_pos_.end() && !user_labels_.empty()) return user_labels_[it->second];
  return std::to_string(u);
}

std::string RatingsDataset::item_label(ItemId i) const {
  auto it = item_pos_.find(i);
  if (it != item_pos_.end() && !item_labels_.empty()) return item_labels_[it->second];
  return std::to_string(i);
}

bool RatingsDataset::operator==(const RatingsDataset& other) const {
  return users_ == other.users_ && items_ == other.items_ && rows_ == other.rows_;
}

void DatasetBuilder::add(UserId u, ItemId i, double normalized_rating) {
  if (!(normalized_rating > 0.0) || normalized_rating > 1.0) {
    throw ValidationError("normalized rating out of (0, 1]: " + std::to_string(normalized_rating));
  }
  entries_.push_back({u, i, normalized_rating, entries_.size()});
}

void DatasetBuilder::set_user_label(UserId u, std::string label) {
  user_labels_[u] = std::move(label);
}

void DatasetBuilder::set_item_label(ItemId i, std::string label) {
  item_labels_[i] = std::move(label);
}

RatingsDataset DatasetBuilder::build() {
  // Sort by (user, item, seq); the last entry of each (user, item) run is
  // the latest occurrence and wins.
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (a.user != b.user) return a.user < b.user;
    if (a.item != b.item) return a.item < b.item;
    return a.seq < b.seq;
  });

  RatingsDataset ds;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k + 1 < entries_.size() && entries_[k + 1].user == entries_[k].user &&
        entries_[k + 1].item == entries_[k].item) {
      continue;  // superseded by a later duplicate
    }
    const Entry& e = entries_[k];
    auto [it, inserted] = ds.user_pos_.try_emplace(e.user, ds.users_.size());
    if (inserted) {
      ds.users_.push_back(e.user);
      ds.rows_.emplace_back();
    }
    ds.rows_[it->second].push_back({e.item, e.value});
    ++ds.rating_count_;
  }

  // Collect and index items.
  std::vector<ItemId> items;
  for (const auto& row : ds.rows_) {
    for (const auto& r : row) items.push_back(r.item);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  ds.items_ = std::move(items);
  ds.item_pos_.reserve(ds.items_.size());
  for (std::size_t k = 0; k < ds.items_.size(); ++k) ds.item_pos_[ds.items_[k]] = k;

  // Users were inserted in (sorted) entry order, so users_ is ascending and
  // each row is already sorted by item id. Build the transpose and norms.
  ds.columns_.resize(ds.items_.size());
  ds.user_norms_.resize(ds.users_.size(), 0.0);
  for (std::size_t up = 0; up < ds.users_.size(); ++up) {
    double sq = 0.0;
    for (const auto& r : ds.rows_[up]) {
      ds.columns_[ds.item_pos_[r.item]].push_back({ds.users_[up], r.value});
      sq += r.value * r.value;
    }
    ds.user_norms_[up] = std::sqrt(sq);
  }
  // Rows are visited in ascending user order, so columns come out sorted.

  if (!user_labels_.empty()) {
    ds.user_labels_.resize(ds.users_.size());
    for (std::size_t k = 0; k < ds.users_.size(); ++k) {
      auto it = user_labels_.find(ds.users_[k]);
      ds.user_labels_[k] = it != user_labels_.end() ? it->second : std::to_string(ds.users_[k]);
    }
  }
  if (!item_labels_.empty()) {
    ds.item_labels_.resize(ds.items_.size());
    for (std::size_t k = 0; k < ds.items_.size(); ++k) {
      auto it = item_labels_.find(ds.items_[k]);
      ds.item_labels_[k] = it != item_labels_.end() ? it->second : std::to_string(ds.items_[k]);
    }
  }
  return ds;
}

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& message) {
  std::ostringstream os;
  os << path.string() << ":" << line_no << ": " << message;
  throw ParseError(os.str());
}

double parse_rating_token(std::string_view token, double scale_max,
                          const std::filesystem::path& path, std::size_t line_no) {
  double raw = 0.0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), raw);
  if (ec != std::errc{} || end != token.data() + token.size()) {
    parse_fail(path, line_no, "non-numeric rating '" + std::string(token) + "'");
  }
  if (!(raw > 0.0) || raw > scale_max) {
    std::ostringstream os;
    os << path.string() << ":" << line_no << ": rating " << raw << " outside (0, " << scale_max
       << "]";
    throw ValidationError(os.str());
  }
  return raw / scale_max;
}

std::int64_t parse_id_token(std::string_view token, const std::filesystem::path& path,
                            std::size_t line_no, const char* what) {
  std::int64_t id = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
  if (ec != std::errc{} || end != token.data() + token.size()) {
    parse_fail(path, line_no, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return id;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void emit_stats(const RatingsDataset& ds, std::ostream* diagnostics) {
  std::ostream& out = diagnostics ? *diagnostics : std::clog;
  out << "users=" << ds.user_count() << " items=" << ds.item_count()
      << " ratings=" << ds.rating_count() << "\n";
}

}  // namespace

RatingsDataset load_movielens(const std::filesystem::path& path, double rating_scale_max,
                              std::ostream* diagnostics) {
  if (!(rating_scale_max > 0.0)) throw ValidationError("rating scale max must be positive");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  DatasetBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;

    std::string_view rest(line);
    std::string_view field[4];
    for (int f = 0; f < 4; ++f) {
      auto sep = rest.find("::");
      if (f < 3) {
        if (sep == std::string_view::npos) parse_fail(path, line_no, "expected 4 '::' fields");
        field[f] = rest.substr(0, sep);
        rest.remove_prefix(sep + 2);
      } else {
        field[f] = rest;
      }
    }
    UserId user = parse_id_token(field[0], path, line_no, "user id");
    ItemId item = parse_id_token(field[1], path, line_no, "item id");
    builder.add(user, item, parse_rating_token(field[2], rating_scale_max, path, line_no));
  }
  RatingsDataset ds = builder.build();
  emit_stats(ds, diagnostics);
  return ds;
}

RatingsDataset load_amazon(const std::filesystem::path& path, double rating_scale_max,
                           std::ostream* diagnostics) {
  if (!(rating_scale_max > 0.0)) throw ValidationError("rating scale max must be positive");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  DatasetBuilder builder;
  std::unordered_map<std::string, UserId> user_ids;
  std::unordered_map<std::string, ItemId> item_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;

    std::string_view rest(line);
    std::string_view field[4];
    for (int f = 0; f < 4; ++f) {
      auto sep = rest.find(',');
      if (f < 3) {
        if (sep == std::string_view::npos) parse_fail(path, line_no, "expected 4 comma fields");
        field[f] = rest.substr(0, sep);
        rest.remove_prefix(sep + 1);
      } else {
        field[f] = rest;
      }
    }
    if (field[0].empty() || field[1].empty()) parse_fail(path, line_no, "empty user or item token");

    auto [uit, unew] = user_ids.try_emplace(std::string(field[0]),
                                            static_cast<UserId>(user_ids.size()));
    auto [iit, inew] = item_ids.try_emplace(std::string(field[1]),
                                            static_cast<ItemId>(item_ids.size()));
    if (unew) builder.set_user_label(uit->second, uit->first);
    if (inew) builder.set_item_label(iit->second, iit->first);
    builder.add(uit->second, iit->second,
                parse_rating_token(field[2], rating_scale_max, path, line_no));
  }
  RatingsDataset ds = builder.build();
  emit_stats(ds, diagnostics);
  return ds;
}

std::vector<UserId> filter_eligible_users(const RatingsDataset& ds, int min_ratings) {
  if (min_ratings < 1) throw ValidationError("min_ratings must be >= 1");
  std::vector<UserId> out;
  for (UserId u : ds.users()) {
    if (ds.items_of(u).size() >= static_cast<std::size_t>(min_ratings)) out.push_back(u);
  }
  return out;
}

Group Group::make(const RatingsDataset& ds, std::vector<UserId> members, int min_ratings) {
  if (members.empty()) throw ValidationError("group must have at least one member");
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (members[a] == members[b]) {
        throw ValidationError("duplicate group member " + std::to_string(members[a]));
      }
    }
  }
  Group g;
  g.members_ = std::move(members);
  g.member_items_.reserve(g.members_.size());
  for (UserId u : g.members_) {
    if (!ds.has_user(u)) throw ValidationError("unknown user " + std::to_string(u));
    auto row = ds.items_of(u);
    if (row.size() < static_cast<std::size_t>(min_ratings)) {
      throw ValidationError("user " + std::to_string(u) + " has fewer than " +
                            std::to_string(min_ratings) + " ratings");
    }
    std::vector<ItemId> items;
    items.reserve(row.size());
    for (const auto& r : row) items.push_back(r.item);
    g.member_items_.push_back(std::move(items));
  }
  for (const auto& items : g.member_items_) {
    std::vector<ItemId> merged;
    merged.reserve(g.union_items_.size() + items.size());
    std::set_union(g.union_items_.begin(), g.union_items_.end(), items.begin(), items.end(),
                   std::back_inserter(merged));
    g.union_items_ = std::move(merged);
  }
  return g;
}

bool Group::is_member(UserId u) const {
  return std::find(members_.begin(), members_.end(), u) != members_.end();
}

std::vector<Group> sample_groups(const RatingsDataset& ds, std::span<const UserId> eligible,
                                 int group_size, int count, std::uint64_t seed, int min_ratings) {
  if (group_size < 1) throw ValidationError("group size must be >= 1");
  if (count < 1) throw ValidationError("group count must be >= 1");
  if (eligible.size() < static_cast<std::size_t>(group_size)) {
    throw ConfigError("eligible pool (" + std::to_string(eligible.size()) +
                      ") smaller than group size " + std::to_string(group_size));
  }

  detail::SplitMix64 rng(seed);
  std::vector<Group> groups;
  groups.reserve(count);
  std::vector<UserId> pool(eligible.begin(), eligible.end());
  for (int g = 0; g < count; ++g) {
    // Partial Fisher-Yates over a fresh copy of the pool.
    std::vector<UserId> shuffled = pool;
    std::vector<UserId> members;
    members.reserve(group_size);
    for (int k = 0; k < group_size; ++k) {
      std::size_t j = k + rng.next_below(shuffled.size() - k);
      std::swap(shuffled[k], shuffled[j]);
      members.push_back(shuffled[k]);
    }
    groups.push_back(Group::make(ds, std::move(members), min_ratings));
  }
  return groups;
}

}  // namespace gcx
