#include "gcx/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "gcx/synthetic.hpp"

namespace gcx {

std::string_view to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::MovieLens: return "movielens";
    case DatasetKind::Amazon: return "amazon";
    case DatasetKind::Synthetic: return "synthetic";
  }
  return "?";
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) {
  if (name == "movielens") return DatasetKind::MovieLens;
  if (name == "amazon") return DatasetKind::Amazon;
  if (name == "synthetic") return DatasetKind::Synthetic;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (group_sizes.empty()) throw ConfigError("group_sizes must not be empty");
  for (int s : group_sizes) {
    if (s < 1) throw ConfigError("group sizes must be positive");
  }
  if (groups_per_size < 1) throw ConfigError("groups_per_size must be positive");
  if (min_ratings < 1) throw ConfigError("min_ratings must be positive");
  if (budget < 1) throw ConfigError("budget must be >= 1");
  if (list_length < 1) throw ConfigError("list_length must be positive");
  if (window < 1) throw ConfigError("window must be positive");
  if (methods.empty()) throw ConfigError("methods must not be empty");
  if (k_neighbors < 1) throw ConfigError("k_neighbors must be positive");
  if (utility_weight < 0.0 || utility_weight > 1.0) {
    throw ConfigError("utility_weight outside [0, 1]");
  }
  if (max_pareto_iterations < 1) throw ConfigError("max_pareto_iterations must be positive");
  if (dataset_kind != DatasetKind::Synthetic && path.empty()) {
    throw ConfigError("dataset path required for " + std::string(to_string(dataset_kind)));
  }
}

RatingsDataset load_dataset(const ExperimentConfig& cfg, std::ostream* diagnostics) {
  switch (cfg.dataset_kind) {
    case DatasetKind::MovieLens:
      return load_movielens(cfg.path, cfg.rating_scale_max, diagnostics);
    case DatasetKind::Amazon:
      return load_amazon(cfg.path, cfg.rating_scale_max, diagnostics);
    case DatasetKind::Synthetic:
      return generate_synthetic(cfg.synth_users, cfg.synth_items, cfg.synth_density, cfg.seed);
  }
  throw ConfigError("unknown dataset kind");
}

namespace {

struct GridCell {
  int group_size = 0;
  int group_id = 0;
  Method method = Method::GreedyGrow;
  bool pareto = false;
};

std::vector<bool> pareto_values(ParetoMode mode) {
  switch (mode) {
    case ParetoMode::Off: return {false};
    case ParetoMode::On: return {true};
    case ParetoMode::Both: return {false, true};
  }
  return {false};
}

ExplanationReport make_row(const ExperimentConfig& cfg, const GridCell& cell) {
  ExplanationReport row;
  row.dataset = std::string(to_string(cfg.dataset_kind));
  row.group_size = cell.group_size;
  row.group_id = cell.group_id;
  row.method = cell.method;
  row.pareto = cell.pareto;
  return row;
}

ExplanationReport run_cell(const RatingsDataset& ds, const GroupRecommender& rec,
                           const ExperimentConfig& cfg, const GridCell& cell, const Group& group,
                           ItemId target, bool nothing_to_explain) {
  ExplanationReport row = make_row(cfg, cell);
  if (nothing_to_explain) {
    row.status = "nothing_to_explain";
    return row;
  }

  SearchOptions options;
  options.method = cell.method;
  options.pareto_preprocess = cell.pareto;
  options.list_length = cfg.list_length;
  options.window = cfg.window;
  options.max_pareto_iterations = cfg.max_pareto_iterations;
  options.budget = cfg.budget;
  options.count_metric_calls_in_budget = cfg.count_metric_calls_in_budget;

  SearchOutcome outcome;
  try {
    outcome = run_search(ds, rec, group, target, options);
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    return row;
  }
  row.search_calls = outcome.search_calls;
  row.metric_calls = outcome.metric_calls;
  switch (outcome.status) {
    case SearchStatus::Found: {
      const Explanation& e = *outcome.explanation;
      row.status = e.valid ? "ok" : "invalid";
      row.expl_size = e.items.size();
      row.minimality = minimality(e.items.size(), group.union_items().size());
      row.interpretability = interpretability(ds, e.items, group);
      row.sigma = contribution_stddev(e.member_contributions);
      row.fairness = fairness(e.member_contributions);
      break;
    }
    case SearchStatus::NotFound:
      row.status = "no_counterfactual";
      break;
    case SearchStatus::BudgetExhausted:
      row.status = "budget_exhausted";
      break;
  }
  return row;
}

MethodSummary summarize(const std::vector<ExplanationReport>& rows, Method method, bool pareto,
                        int group_size) {
  MethodSummary s;
  s.method = method;
  s.pareto = pareto;
  s.group_size = group_size;
  double size_sum = 0, cost_sum = 0, interp_sum = 0, sigma_sum = 0, utility_sum = 0;
  for (const auto& r : rows) {
    if (r.method != method || r.pareto != pareto || r.group_size != group_size) continue;
    ++s.runs;
    if (r.ok()) {
      ++s.found;
      size_sum += static_cast<double>(r.expl_size);
      cost_sum += static_cast<double>(r.search_calls);
      interp_sum += r.interpretability;
      sigma_sum += r.sigma;
      utility_sum += r.utility;
    } else if (r.status == "budget_exhausted") {
      ++s.budget_exhausted;
    } else if (r.status == "no_counterfactual") {
      ++s.no_counterfactual;
    }
  }
  if (s.found > 0) {
    s.mean_size = size_sum / s.found;
    s.mean_cost = cost_sum / s.found;
    s.mean_interpretability = interp_sum / s.found;
    s.mean_sigma = sigma_sum / s.found;
    s.mean_utility = utility_sum / s.found;
  }
  return s;
}

}  // namespace

ExperimentResult run_experiment(const RatingsDataset& ds, const ExperimentConfig& cfg) {
  cfg.validate();
  CfRecommender recommender(ds, cfg.k_neighbors);
  const std::vector<UserId> eligible = filter_eligible_users(ds, cfg.min_ratings);

  // One target per (size, group), shared by every method cell.
  struct GroupCase {
    Group group;
    ItemId target = 0;
    bool nothing_to_explain = false;
  };
  std::vector<std::vector<GroupCase>> cases;  // per group size
  for (std::size_t si = 0; si < cfg.group_sizes.size(); ++si) {
    const int size = cfg.group_sizes[si];
    // Distinct deterministic seed per size so size grids are independent.
    const std::uint64_t seed = cfg.seed + 0x100000001ULL * static_cast<std::uint64_t>(size);
    std::vector<Group> groups =
        sample_groups(ds, eligible, size, cfg.groups_per_size, seed, cfg.min_ratings);
    std::vector<GroupCase> size_cases;
    size_cases.reserve(groups.size());
    for (auto& g : groups) {
      GroupCase gc{std::move(g), 0, false};
      RecommendationList factual = factual_list(ds, recommender, gc.group, cfg.list_length);
      if (factual.empty()) {
        gc.nothing_to_explain = true;
      } else {
        gc.target = factual.item_at(1);
      }
      size_cases.push_back(std::move(gc));
    }
    cases.push_back(std::move(size_cases));
  }

  // Flatten the grid; rows are written back by cell index, so the output
  // order never depends on scheduling.
  std::vector<GridCell> cells;
  const std::vector<bool> pareto_flags = pareto_values(cfg.pareto_filter);
  for (std::size_t si = 0; si < cfg.group_sizes.size(); ++si) {
    for (int gid = 0; gid < cfg.groups_per_size; ++gid) {
      for (Method method : cfg.methods) {
        for (bool pareto : pareto_flags) {
          cells.push_back({cfg.group_sizes[si], gid, method, pareto});
        }
      }
    }
  }

  std::vector<ExplanationReport> rows(cells.size());
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : hardware;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      const GridCell& cell = cells[idx];
      const std::size_t si =
          std::find(cfg.group_sizes.begin(), cfg.group_sizes.end(), cell.group_size) -
          cfg.group_sizes.begin();
      const GroupCase& gc = cases[si][cell.group_id];
      rows[idx] = run_cell(ds, recommender, cfg, cell, gc.group, gc.target,
                           gc.nothing_to_explain);
    }
  };
  if (workers <= 1 || cells.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(workers, cells.size()); ++t) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) t.join();
  }

  // Utility normalization per group-size batch (all methods together).
  ExperimentResult result;
  {
    std::ostringstream p;
    p << to_string(cfg.dataset_kind);
    if (!cfg.path.empty()) p << " (" << cfg.path << ")";
    p << ": users=" << ds.user_count() << " items=" << ds.item_count()
      << " ratings=" << ds.rating_count() << ", seed=" << cfg.seed;
    result.provenance = p.str();
  }
  result.rows = std::move(rows);
  for (int size : cfg.group_sizes) {
    std::vector<std::size_t> batch;
    for (std::size_t k = 0; k < result.rows.size(); ++k) {
      if (result.rows[k].group_size == size) batch.push_back(k);
    }
    if (batch.empty()) continue;
    std::vector<ExplanationReport> scratch;
    scratch.reserve(batch.size());
    for (std::size_t k : batch) scratch.push_back(result.rows[k]);
    utility_batch(scratch, cfg.utility_weight);
    for (std::size_t j = 0; j < batch.size(); ++j) {
      result.rows[batch[j]].utility = scratch[j].utility;
    }
  }

  for (int size : cfg.group_sizes) {
    for (Method method : cfg.methods) {
      for (bool pareto : pareto_flags) {
        result.summaries.push_back(summarize(result.rows, method, pareto, size));
      }
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RatingsDataset ds = load_dataset(cfg);
  return run_experiment(ds, cfg);
}

void write_summary(std::ostream& out, const ExperimentResult& result) {
  if (!result.provenance.empty()) out << "# " << result.provenance << "\n";
  out << "# means over successful runs only; failures counted separately\n";
  out << std::left << std::setw(24) << "method" << std::setw(8) << "pareto" << std::setw(6)
      << "size" << std::setw(6) << "runs" << std::setw(7) << "found" << std::setw(8) << "budget"
      << std::setw(7) << "no_cf" << std::setw(11) << "mean_size" << std::setw(11) << "mean_cost"
      << std::setw(13) << "mean_interp" << std::setw(12) << "mean_sigma" << "mean_utility\n";
  for (const auto& s : result.summaries) {
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line << std::left << std::setw(24) << to_string(s.method) << std::setw(8)
         << (s.pareto ? "on" : "off") << std::setw(6) << s.group_size << std::setw(6) << s.runs
         << std::setw(7) << s.found << std::setw(8) << s.budget_exhausted << std::setw(7)
         << s.no_counterfactual << std::setprecision(2) << std::setw(11) << s.mean_size
         << std::setw(11) << s.mean_cost << std::setprecision(4) << std::setw(13)
         << s.mean_interpretability << std::setw(12) << s.mean_sigma << s.mean_utility;
    out << line.str() << "\n";
  }
}

ExplainResult explain_once(const RatingsDataset& ds, const ExperimentConfig& cfg,
                           const ExplainRequest& request) {
  CfRecommender recommender(ds, cfg.k_neighbors);
  Group group = Group::make(ds, request.members, cfg.min_ratings);
  RecommendationList factual = factual_list(ds, recommender, group, cfg.list_length);

  std::ostringstream out;
  out << "group:";
  for (UserId u : group.members()) out << ' ' << ds.user_label(u);
  out << "\ninteraction union: " << group.union_items().size() << " items\n";
  out << "factual list:\n";
  for (std::size_t k = 0; k < factual.size(); ++k) {
    out << "  " << (k + 1) << ". " << ds.item_label(factual.entries()[k].item) << " (score "
        << std::setprecision(4) << factual.entries()[k].score << ")\n";
  }

  ItemId target = 0;
  if (request.target) {
    target = *request.target;
  } else if (!factual.empty()) {
    target = factual.item_at(1);
  }
  if (factual.empty() || !factual.contains(target)) {
    out << "status: nothing to explain (target " << target
        << " is not in the factual list)\n";
    return {ExplainStatus::NothingToExplain, out.str(), {}};
  }
  out << "target: " << ds.item_label(target) << " (rank " << factual.rank_of(target) << ")\n\n";

  std::vector<ExplanationReport> reports;
  std::vector<std::string> details;
  std::vector<std::pair<Method, Trace>> traces;
  for (Method method : request.methods) {
    SearchOptions options;
    options.method = method;
    options.pareto_preprocess = request.pareto_preprocess;
    options.list_length = cfg.list_length;
    options.window = cfg.window;
    options.max_pareto_iterations = cfg.max_pareto_iterations;
    options.budget = cfg.budget;
    options.count_metric_calls_in_budget = cfg.count_metric_calls_in_budget;
    options.record_trace = request.record_trace;

    std::ostringstream d;
    d << to_string(method) << ":\n";
    ExplanationReport row;
    row.dataset = std::string(to_string(cfg.dataset_kind));
    row.group_size = static_cast<int>(group.size());
    row.method = method;
    row.pareto = request.pareto_preprocess;

    SearchOutcome outcome;
    try {
      outcome = run_search(ds, recommender, group, target, options);
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
      d << "  " << row.status << "\n";
      reports.push_back(row);
      details.push_back(d.str());
      continue;
    }
    if (request.record_trace) traces.emplace_back(method, outcome.trace);
    row.search_calls = outcome.search_calls;
    row.metric_calls = outcome.metric_calls;
    switch (outcome.status) {
      case SearchStatus::Found: {
        const Explanation& e = *outcome.explanation;
        row.status = "ok";
        row.expl_size = e.items.size();
        row.minimality = minimality(e.items.size(), group.union_items().size());
        row.interpretability = interpretability(ds, e.items, group);
        row.sigma = contribution_stddev(e.member_contributions);
        row.fairness = fairness(e.member_contributions);
        d << "  explanation (" << e.items.size() << " items):";
        for (ItemId i : e.items) d << ' ' << ds.item_label(i);
        d << "\n  member contributions:";
        for (std::size_t k = 0; k < group.size(); ++k) {
          d << ' ' << ds.user_label(group.members()[k]) << '=' << e.member_contributions[k];
        }
        d << "\n  verified: " << (e.valid ? "yes" : "NO") << "\n";
        d << std::setprecision(4) << "  minimality " << row.minimality << ", interpretability "
          << row.interpretability << ", cost " << row.search_calls << " (+" << row.metric_calls
          << " metric), fairness ";
        if (row.fairness == kPerfectFairness) {
          d << "perfect";
        } else {
          d << row.fairness;
        }
        d << "\n";
        break;
      }
      case SearchStatus::NotFound:
        row.status = "no_counterfactual";
        d << "  no counterfactual found (" << row.search_calls << " calls)\n";
        break;
      case SearchStatus::BudgetExhausted:
        row.status = "budget_exhausted";
        d << "  budget exhausted after " << row.search_calls << " calls\n";
        break;
    }
    reports.push_back(row);
    details.push_back(d.str());
  }

  bool any_ok = std::any_of(reports.begin(), reports.end(),
                            [](const ExplanationReport& r) { return r.ok(); });
  if (any_ok) {
    utility_batch(reports, cfg.utility_weight);
  }
  for (std::size_t k = 0; k < reports.size(); ++k) {
    out << details[k];
    if (reports[k].ok()) {
      out << std::setprecision(4) << "  utility " << reports[k].utility << "\n";
    }
    out << "\n";
  }
  return {any_ok ? ExplainStatus::Explained : ExplainStatus::NoExplanationFound, out.str(),
          std::move(traces)};
}

}  // namespace gcx
