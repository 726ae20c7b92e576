#include "gcx/eval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "gcx/metrics.hpp"

namespace gcx {

double minimality(std::size_t explanation_size, std::size_t union_size) {
  if (explanation_size == 0) throw ValidationError("minimality of an empty explanation");
  if (explanation_size > union_size) {
    throw ValidationError("explanation larger than the interaction union");
  }
  return 1.0 - static_cast<double>(explanation_size) / static_cast<double>(union_size);
}

double interpretability(const RatingsDataset& ds, std::span<const ItemId> items,
                        const Group& group) {
  if (items.empty()) throw ValidationError("interpretability of an empty explanation");
  double group_sum = 0.0;
  double public_sum = 0.0;
  for (ItemId i : items) {
    group_sum += item_recognition(ds, i, group.members());
    public_sum += public_item_recognition(ds, i, group);
  }
  return (group_sum + public_sum) / (2.0 * static_cast<double>(items.size()));
}

std::vector<int> member_contributions(const RatingsDataset& ds, const Group& group,
                                      std::span<const ItemId> items) {
  std::vector<int> counts(group.size(), 0);
  for (std::size_t k = 0; k < group.size(); ++k) {
    const UserId u = group.members()[k];
    for (ItemId i : items) {
      if (ds.interacted(u, i)) ++counts[k];
    }
  }
  return counts;
}

double contribution_stddev(std::span<const int> contributions) {
  if (contributions.empty()) throw ValidationError("contribution deviation of an empty group");
  // Integer sums keep the result exactly permutation-invariant.
  long long sum = 0;
  long long sum_sq = 0;
  for (int c : contributions) {
    sum += c;
    sum_sq += static_cast<long long>(c) * c;
  }
  const double n = static_cast<double>(contributions.size());
  const double mean = static_cast<double>(sum) / n;
  const double variance = std::max(0.0, static_cast<double>(sum_sq) / n - mean * mean);
  return std::sqrt(variance);
}

double fairness(std::span<const int> contributions) {
  const double sigma = contribution_stddev(contributions);
  if (sigma == 0.0) return kPerfectFairness;
  return 1.0 / sigma;
}

double fairness(const RatingsDataset& ds, std::span<const ItemId> items, const Group& group) {
  if (items.empty()) throw ValidationError("fairness of an empty explanation");
  const std::vector<int> counts = member_contributions(ds, group, items);
  return fairness(counts);
}

void utility_batch(std::span<ExplanationReport> reports, double weight_minimality) {
  if (reports.empty()) throw ValidationError("utility over an empty batch");
  if (weight_minimality < 0.0 || weight_minimality > 1.0) {
    throw ValidationError("utility weight outside [0, 1]");
  }

  double min_lo = 0.0, min_hi = 0.0, int_lo = 0.0, int_hi = 0.0;
  bool first = true;
  for (const auto& r : reports) {
    if (!r.ok()) continue;
    if (first) {
      min_lo = min_hi = r.minimality;
      int_lo = int_hi = r.interpretability;
      first = false;
    } else {
      min_lo = std::min(min_lo, r.minimality);
      min_hi = std::max(min_hi, r.minimality);
      int_lo = std::min(int_lo, r.interpretability);
      int_hi = std::max(int_hi, r.interpretability);
    }
  }

  auto normalize = [](double value, double lo, double hi) {
    if (hi == lo) return 0.5;  // degenerate dimension
    return (value - lo) / (hi - lo);
  };
  for (auto& r : reports) {
    if (!r.ok()) continue;
    const double m = normalize(r.minimality, min_lo, min_hi);
    const double i = normalize(r.interpretability, int_lo, int_hi);
    r.utility = weight_minimality * m + (1.0 - weight_minimality) * i;
  }
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const ExplanationReport> reports) {
  out << "dataset,group_size,group_id,method,pareto,expl_size,search_calls,metric_calls,"
         "minimality,interpretability,fairness,utility,status\n";
  for (const auto& r : reports) {
    out << r.dataset << ',' << r.group_size << ',' << r.group_id << ',' << to_string(r.method)
        << ',' << (r.pareto ? "on" : "off") << ',';
    if (r.ok()) {
      out << r.expl_size << ',' << r.search_calls << ',' << r.metric_calls << ','
          << format_double(r.minimality) << ',' << format_double(r.interpretability) << ','
          << (r.fairness == kPerfectFairness ? "inf" : format_double(r.fairness)) << ','
          << format_double(r.utility);
    } else {
      out << ',' << r.search_calls << ',' << r.metric_calls << ",,,,";
    }
    out << ',' << r.status << '\n';
  }
}

}  // namespace gcx
