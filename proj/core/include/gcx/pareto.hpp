#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gcx/metrics.hpp"
#include "gcx/search.hpp"
#include "gcx/types.hpp"

namespace gcx {

/// An item embedded in metric space. All points of one computation share
/// the same dimensionality.
struct MetricPoint {
  ItemId item = 0;
  std::vector<double> coords;

  friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

/// Per-dimension offsets steering dominance strictness.
using ThresholdVector = std::vector<double>;

/// True iff a dominates b under the offset test: a >= b + tau in every
/// coordinate and a > b in at least one (the strictness condition ignores
/// tau, so coordinate-wise equal points never dominate each other).
bool tau_dominates(const MetricPoint& a, const MetricPoint& b, const ThresholdVector& tau);

/// The set of points not dominated by any other point, where tau acts as a
/// relaxation offset: tau = 0 is the plain skyline, negative entries widen
/// the margin a dominator must clear (supersets), positive entries narrow
/// it (subsets). For componentwise tau1 <= tau2, the tau1 result contains
/// the tau2 result. Output preserves a deterministic order (total score
/// descending, ties by ascending item id).
std::vector<MetricPoint> tau_pareto_set(std::span<const MetricPoint> points,
                                        const ThresholdVector& tau);

/// Metric vectors as 5-dimensional points (component order: group
/// recognition, public recognition, group rating, public rating,
/// influence).
std::vector<MetricPoint> to_metric_points(std::span<const ItemMetricVector> vectors);

/// Population standard deviation per coordinate.
std::vector<double> coordinate_stddev(std::span<const MetricPoint> points);

struct ParetoIterationRecord {
  int iteration = 0;
  double tau_scale = 0.0;  // multiple of the per-dimension deviation applied
  std::size_t pareto_size = 0;
  bool cf_found = false;
};

/// Iterative search-space filter: starting from the plain skyline, it
/// relaxes the dominance thresholds by one standard deviation per round
/// (tau = -it * sigma per dimension) and probes whether removing the
/// resulting item set evicts the target. Returns that item set (sorted
/// ascending) on success; nullopt when the set reaches the whole union or
/// `max_iterations` rounds pass without a counterfactual.
std::optional<std::vector<ItemId>> pareto_filtering(SearchContext& ctx,
                                                    std::span<const ItemMetricVector> vectors,
                                                    int max_iterations,
                                                    std::vector<ParetoIterationRecord>* diag =
                                                        nullptr);

}  // namespace gcx
