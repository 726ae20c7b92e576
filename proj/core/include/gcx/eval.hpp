#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gcx/dataset.hpp"
#include "gcx/search.hpp"

namespace gcx {

/// 1 - |E| / |I_G|; larger is more concise. The explanation must be
/// non-empty and no larger than the union.
double minimality(std::size_t explanation_size, std::size_t union_size);

/// Mean of group and public recognition over the explanation's items.
double interpretability(const RatingsDataset& ds, std::span<const ItemId> items,
                        const Group& group);

/// Number of explanation items each member interacted with, parallel to
/// the group's member order.
std::vector<int> member_contributions(const RatingsDataset& ds, const Group& group,
                                      std::span<const ItemId> items);

/// Population standard deviation of the per-member contribution counts.
double contribution_stddev(std::span<const int> contributions);

/// Sentinel for perfectly balanced explanations (zero deviation).
inline constexpr double kPerfectFairness = std::numeric_limits<double>::infinity();

/// Reciprocal of the contribution deviation; kPerfectFairness when every
/// member contributed the same count.
double fairness(std::span<const int> contributions);
double fairness(const RatingsDataset& ds, std::span<const ItemId> items, const Group& group);

/// One row of an experiment batch. Quality metrics are meaningful only
/// when status == "ok"; utility is filled by utility_batch.
struct ExplanationReport {
  std::string dataset;
  int group_size = 0;
  int group_id = 0;
  Method method = Method::GreedyGrow;
  bool pareto = false;
  std::string status = "ok";
  std::size_t expl_size = 0;
  long long search_calls = 0;
  long long metric_calls = 0;
  double minimality = 0.0;
  double interpretability = 0.0;
  double fairness = 0.0;   // kPerfectFairness when sigma == 0
  double sigma = 0.0;      // contribution deviation behind the fairness value
  double utility = 0.0;

  bool ok() const { return status == "ok"; }
};

/// Min-max normalizes minimality and interpretability across the batch's
/// ok rows and fills utility = w * minimality' + (1 - w) * interpretability'.
/// A dimension with no spread normalizes to 0.5 for every row.
void utility_batch(std::span<ExplanationReport> reports, double weight_minimality = 0.5);

/// Header plus one row per report:
/// dataset,group_size,group_id,method,pareto,expl_size,search_calls,
/// metric_calls,minimality,interpretability,fairness,utility,status.
/// Metric fields are empty on non-ok rows; perfect fairness prints "inf".
void write_report_csv(std::ostream& out, std::span<const ExplanationReport> reports);

}  // namespace gcx
