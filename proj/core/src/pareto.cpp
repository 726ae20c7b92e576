#include "gcx/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gcx {

bool tau_dominates(const MetricPoint& a, const MetricPoint& b, const ThresholdVector& tau) {
  if (a.coords.size() != b.coords.size() || a.coords.size() != tau.size()) {
    throw ValidationError("tau_dominates dimensionality mismatch");
  }
  bool strict = false;
  for (std::size_t w = 0; w < tau.size(); ++w) {
    if (a.coords[w] < b.coords[w] + tau[w]) return false;
    if (a.coords[w] > b.coords[w]) strict = true;
  }
  return strict;
}

namespace {

double coord_sum(const MetricPoint& p) {
  return std::accumulate(p.coords.begin(), p.coords.end(), 0.0);
}

bool presort_order(const MetricPoint& a, const MetricPoint& b) {
  const double sa = coord_sum(a);
  const double sb = coord_sum(b);
  if (sa != sb) return sa > sb;
  return a.item < b.item;
}

}  // namespace

std::vector<MetricPoint> tau_pareto_set(std::span<const MetricPoint> points,
                                        const ThresholdVector& tau) {
  if (points.empty()) return {};
  for (const auto& p : points) {
    if (p.coords.size() != tau.size()) {
      throw ValidationError("tau_pareto_set dimensionality mismatch");
    }
  }

  // The relaxation offset maps to a dominance margin of the opposite sign:
  // a dominator must clear the dominated point by -tau in every dimension.
  ThresholdVector margin(tau.size());
  for (std::size_t w = 0; w < tau.size(); ++w) margin[w] = -tau[w];

  // Sort-filter-skyline: with a non-negative margin a dominator always has
  // a strictly larger coordinate sum, so it precedes its victims and the
  // filtering pass only needs to compare against survivors. A negative
  // margin component breaks that ordering, so the scan then compares
  // against every point.
  const bool survivors_suffice =
      std::all_of(margin.begin(), margin.end(), [](double m) { return m >= 0.0; });

  std::vector<MetricPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), presort_order);

  std::vector<MetricPoint> kept;
  for (const auto& p : sorted) {
    bool dominated = false;
    if (survivors_suffice) {
      for (const auto& q : kept) {
        if (tau_dominates(q, p, margin)) {
          dominated = true;
          break;
        }
      }
    } else {
      for (const auto& q : sorted) {
        if (&q != &p && tau_dominates(q, p, margin)) {
          dominated = true;
          break;
        }
      }
    }
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

std::vector<MetricPoint> to_metric_points(std::span<const ItemMetricVector> vectors) {
  std::vector<MetricPoint> points;
  points.reserve(vectors.size());
  for (const auto& v : vectors) {
    points.push_back({v.item, {v.rc_group, v.rc_public, v.rt_group, v.rt_public, v.influence}});
  }
  return points;
}

std::vector<double> coordinate_stddev(std::span<const MetricPoint> points) {
  if (points.empty()) return {};
  const std::size_t d = points.front().coords.size();
  std::vector<double> mean(d, 0.0);
  for (const auto& p : points) {
    for (std::size_t w = 0; w < d; ++w) mean[w] += p.coords[w];
  }
  for (auto& m : mean) m /= static_cast<double>(points.size());

  std::vector<double> variance(d, 0.0);
  for (const auto& p : points) {
    for (std::size_t w = 0; w < d; ++w) {
      const double delta = p.coords[w] - mean[w];
      variance[w] += delta * delta;
    }
  }
  std::vector<double> sigma(d);
  for (std::size_t w = 0; w < d; ++w) {
    sigma[w] = std::sqrt(variance[w] / static_cast<double>(points.size()));
  }
  return sigma;
}

std::optional<std::vector<ItemId>> pareto_filtering(SearchContext& ctx,
                                                    std::span<const ItemMetricVector> vectors,
                                                    int max_iterations,
                                                    std::vector<ParetoIterationRecord>* diag) {
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (vectors.empty()) return std::nullopt;

  const std::vector<MetricPoint> points = to_metric_points(vectors);
  const std::vector<double> sigma = coordinate_stddev(points);
  const std::size_t d = sigma.size();
  const std::size_t union_size = ctx.group.union_items().size();

  std::vector<ItemId> filtered;
  for (int it = 0; it < max_iterations; ++it) {
    if (filtered.size() == union_size) return std::nullopt;  // everything examined already

    ThresholdVector tau(d);
    for (std::size_t w = 0; w < d; ++w) tau[w] = -static_cast<double>(it) * sigma[w];

    std::vector<MetricPoint> pareto = tau_pareto_set(points, tau);
    filtered.clear();
    filtered.reserve(pareto.size());
    for (const auto& p : pareto) filtered.push_back(p.item);
    std::sort(filtered.begin(), filtered.end());

    const bool found = is_counterfactual(ctx, filtered);
    if (diag) diag->push_back({it, -static_cast<double>(it), pareto.size(), found});
    if (found) return filtered;
  }
  return std::nullopt;
}

}  // namespace gcx
