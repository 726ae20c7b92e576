#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcx/driver.hpp"
#include "gcx/eval.hpp"

namespace gcx {

enum class DatasetKind { MovieLens, Amazon, Synthetic };

std::string_view to_string(DatasetKind kind);
std::optional<DatasetKind> parse_dataset_kind(std::string_view name);

/// Which candidate sources to evaluate for each method.
enum class ParetoMode { Off, On, Both };

/// Full description of a benchmark run.
struct ExperimentConfig {
  DatasetKind dataset_kind = DatasetKind::Synthetic;
  std::string path;                       // rating file for movielens/amazon
  double rating_scale_max = 5.0;
  std::vector<int> group_sizes = {5, 10};
  int groups_per_size = 20;
  int min_ratings = 50;
  long long budget = 1000;
  int list_length = 10;
  int window = 15;
  std::vector<Method> methods = {Method::GreedyGrow, Method::GrowPrune, Method::ExpRebuild,
                                 Method::FixedWindow};
  ParetoMode pareto_filter = ParetoMode::Both;
  std::uint64_t seed = 42;
  int k_neighbors = 50;
  bool count_metric_calls_in_budget = false;
  double utility_weight = 0.5;
  int max_pareto_iterations = 25;
  int workers = 0;  // 0 = hardware concurrency
  // Synthetic matrix parameters (dataset_kind == Synthetic).
  int synth_users = 200;
  int synth_items = 300;
  double synth_density = 0.3;

  void validate() const;
};

struct MethodSummary {
  Method method = Method::GreedyGrow;
  bool pareto = false;
  int group_size = 0;
  int runs = 0;
  int found = 0;
  int budget_exhausted = 0;
  int no_counterfactual = 0;
  double mean_size = 0.0;            // over found rows
  double mean_cost = 0.0;            // search calls over found rows
  double mean_interpretability = 0.0;
  double mean_sigma = 0.0;           // contribution deviation; lower is fairer
  double mean_utility = 0.0;
};

struct ExperimentResult {
  std::string provenance;  // dataset kind, source and load statistics
  std::vector<ExplanationReport> rows;
  std::vector<MethodSummary> summaries;
};

/// Loads (or generates) the dataset described by the config.
RatingsDataset load_dataset(const ExperimentConfig& cfg, std::ostream* diagnostics = nullptr);

/// Runs the full grid: for every group size, every sampled group, every
/// method and every requested candidate source, searches for an
/// explanation of the factual top-1 item and scores the outcome. Rows
/// appear in deterministic grid order; failures become status rows and
/// never abort the grid. Cells execute concurrently up to the configured
/// worker count.
ExperimentResult run_experiment(const RatingsDataset& ds, const ExperimentConfig& cfg);

/// Convenience overload that loads the dataset itself.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Summaries as a readable table. Means exclude failed runs; the header
/// says so.
void write_summary(std::ostream& out, const ExperimentResult& result);

/// Exit codes for explain_once.
enum class ExplainStatus { Explained = 0, NoExplanationFound = 1, NothingToExplain = 2 };

struct ExplainRequest {
  std::vector<UserId> members;
  std::optional<ItemId> target;  // nullopt = factual top-1
  std::vector<Method> methods = {Method::GreedyGrow, Method::GrowPrune, Method::ExpRebuild,
                                 Method::FixedWindow};
  bool pareto_preprocess = false;
  bool record_trace = false;
};

struct ExplainResult {
  ExplainStatus status = ExplainStatus::NothingToExplain;
  std::string text;  // human-readable report
  std::vector<std::pair<Method, Trace>> traces;  // per method when requested
};

/// Explains one target for one concrete group: prints the factual list,
/// the explanation found by each requested method, and all quality
/// scores. A target outside the factual list yields NothingToExplain.
ExplainResult explain_once(const RatingsDataset& ds, const ExperimentConfig& cfg,
                           const ExplainRequest& request);

}  // namespace gcx
