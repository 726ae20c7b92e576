// gcx: counterfactual explanations for group recommendations.
//
//   gcx synth    generate a synthetic rating file
//   gcx bench    run the full experiment grid, emit CSV + summary
//   gcx explain  explain one target for one concrete group

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <gcx/experiment.hpp>
#include <gcx/synthetic.hpp>

namespace {

using nlohmann::json;

gcx::Method method_from_name(const std::string& name) {
  auto method = gcx::parse_method(name);
  if (!method) throw gcx::ConfigError("unknown method '" + name + "'");
  return *method;
}

void apply_json(gcx::ExperimentConfig& cfg, const json& j) {
  if (j.contains("dataset_kind")) {
    auto kind = gcx::parse_dataset_kind(j["dataset_kind"].get<std::string>());
    if (!kind) throw gcx::ConfigError("unknown dataset_kind");
    cfg.dataset_kind = *kind;
  }
  if (j.contains("path")) cfg.path = j["path"].get<std::string>();
  if (j.contains("rating_scale_max")) cfg.rating_scale_max = j["rating_scale_max"].get<double>();
  if (j.contains("group_sizes")) cfg.group_sizes = j["group_sizes"].get<std::vector<int>>();
  if (j.contains("groups_per_size")) cfg.groups_per_size = j["groups_per_size"].get<int>();
  if (j.contains("min_ratings")) cfg.min_ratings = j["min_ratings"].get<int>();
  if (j.contains("budget")) cfg.budget = j["budget"].get<long long>();
  if (j.contains("list_length")) cfg.list_length = j["list_length"].get<int>();
  if (j.contains("window")) cfg.window = j["window"].get<int>();
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& name : j["methods"]) cfg.methods.push_back(method_from_name(name));
  }
  if (j.contains("pareto_filter")) {
    const auto& v = j["pareto_filter"];
    if (v.is_boolean()) {
      cfg.pareto_filter = v.get<bool>() ? gcx::ParetoMode::On : gcx::ParetoMode::Off;
    } else if (v.get<std::string>() == "both") {
      cfg.pareto_filter = gcx::ParetoMode::Both;
    } else {
      throw gcx::ConfigError("pareto_filter must be true, false or \"both\"");
    }
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("k_neighbors")) cfg.k_neighbors = j["k_neighbors"].get<int>();
  if (j.contains("count_metric_calls_in_budget")) {
    cfg.count_metric_calls_in_budget = j["count_metric_calls_in_budget"].get<bool>();
  }
  if (j.contains("utility_weight")) cfg.utility_weight = j["utility_weight"].get<double>();
  if (j.contains("max_pareto_iterations")) {
    cfg.max_pareto_iterations = j["max_pareto_iterations"].get<int>();
  }
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  if (j.contains("synth_users")) cfg.synth_users = j["synth_users"].get<int>();
  if (j.contains("synth_items")) cfg.synth_items = j["synth_items"].get<int>();
  if (j.contains("synth_density")) cfg.synth_density = j["synth_density"].get<double>();
}

gcx::ExperimentConfig load_config(const std::string& path) {
  gcx::ExperimentConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw gcx::ConfigError("cannot open config file " + path);
  json j;
  in >> j;
  apply_json(cfg, j);
  return cfg;
}

struct CommonFlags {
  std::string config_path;
  std::string dataset_kind;
  std::string dataset_path;
  long long budget = -1;
  int list_length = -1;
  int window = -1;
  int k_neighbors = -1;
  int min_ratings = -1;
  std::int64_t seed = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--dataset", flags.dataset_kind, "movielens, amazon or synthetic");
  cmd->add_option("--path", flags.dataset_path, "rating file path");
  cmd->add_option("--budget", flags.budget, "recommender call budget per run");
  cmd->add_option("--list-length", flags.list_length, "recommendation list length");
  cmd->add_option("--window", flags.window, "initial window size");
  cmd->add_option("--k-neighbors", flags.k_neighbors, "collaborative-filtering neighborhood");
  cmd->add_option("--min-ratings", flags.min_ratings, "eligibility threshold");
  cmd->add_option("--seed", flags.seed, "random seed");
}

gcx::ExperimentConfig resolve_config(const CommonFlags& flags) {
  gcx::ExperimentConfig cfg = load_config(flags.config_path);
  if (!flags.dataset_kind.empty()) {
    auto kind = gcx::parse_dataset_kind(flags.dataset_kind);
    if (!kind) throw gcx::ConfigError("unknown dataset '" + flags.dataset_kind + "'");
    cfg.dataset_kind = *kind;
  }
  if (!flags.dataset_path.empty()) cfg.path = flags.dataset_path;
  if (flags.budget >= 0) cfg.budget = flags.budget;
  if (flags.list_length > 0) cfg.list_length = flags.list_length;
  if (flags.window > 0) cfg.window = flags.window;
  if (flags.k_neighbors > 0) cfg.k_neighbors = flags.k_neighbors;
  if (flags.min_ratings > 0) cfg.min_ratings = flags.min_ratings;
  if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
  return cfg;
}

int run_bench(const gcx::ExperimentConfig& cfg, const std::string& out_path,
              const std::string& summary_path) {
  cfg.validate();
  std::cerr << "loading dataset (" << gcx::to_string(cfg.dataset_kind) << ")...\n";
  gcx::RatingsDataset ds = gcx::load_dataset(cfg, &std::cerr);
  gcx::ExperimentResult result = gcx::run_experiment(ds, cfg);

  if (out_path == "-") {
    gcx::write_report_csv(std::cout, result.rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw gcx::ConfigError("cannot write " + out_path);
    gcx::write_report_csv(out, result.rows);
    std::cerr << "wrote " << result.rows.size() << " rows to " << out_path << "\n";
  }
  if (summary_path.empty() || summary_path == "-") {
    gcx::write_summary(std::cout, result);
  } else {
    std::ofstream out(summary_path);
    if (!out) throw gcx::ConfigError("cannot write " + summary_path);
    gcx::write_summary(out, result);
  }
  return 0;
}

std::vector<gcx::UserId> parse_members(const std::vector<std::int64_t>& raw) {
  return std::vector<gcx::UserId>(raw.begin(), raw.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counterfactual explanations for group recommendations"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic rating file");
  int synth_users = 200;
  int synth_items = 300;
  double synth_density = 0.3;
  std::uint64_t synth_seed = 42;
  std::string synth_out = "-";
  synth->add_option("--users", synth_users, "number of users")->required();
  synth->add_option("--items", synth_items, "number of items")->required();
  synth->add_option("--density", synth_density, "rating probability per cell")->required();
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--out", synth_out, "output file ('-' for stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "run the experiment grid");
  CommonFlags bench_flags;
  add_common_flags(bench, bench_flags);
  std::vector<int> bench_sizes;
  int bench_groups = -1;
  std::vector<std::string> bench_methods;
  std::string bench_pareto;
  int bench_workers = -1;
  std::string bench_out = "results.csv";
  std::string bench_summary;
  bench->add_option("--sizes", bench_sizes, "group sizes");
  bench->add_option("--groups", bench_groups, "groups per size");
  bench->add_option("--methods", bench_methods, "search strategies to run");
  bench->add_option("--pareto", bench_pareto, "on, off or both");
  bench->add_option("--workers", bench_workers, "concurrent grid cells");
  bench->add_option("--out", bench_out, "CSV output path ('-' for stdout)");
  bench->add_option("--summary", bench_summary, "summary output path (default stdout)");

  // explain
  auto* explain = app.add_subcommand("explain", "explain one group recommendation");
  CommonFlags explain_flags;
  add_common_flags(explain, explain_flags);
  std::vector<std::int64_t> explain_members;
  std::string explain_target = "top1";
  std::vector<std::string> explain_methods;
  bool explain_pareto = false;
  std::string metrics_csv;
  std::string trace_path;
  explain->add_option("--members", explain_members, "group member user ids")->required();
  explain->add_option("--target", explain_target, "item id or 'top1'");
  explain->add_option("--methods", explain_methods, "search strategies to run");
  explain->add_flag("--pareto", explain_pareto, "filter the search space first");
  explain->add_option("--metrics-csv", metrics_csv, "dump the item metric vectors");
  explain->add_option("--trace", trace_path, "per-call trace as JSON lines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      if (synth_out == "-") {
        gcx::write_synthetic(std::cout, synth_users, synth_items, synth_density, synth_seed);
      } else {
        std::ofstream out(synth_out);
        if (!out) throw gcx::ConfigError("cannot write " + synth_out);
        gcx::write_synthetic(out, synth_users, synth_items, synth_density, synth_seed);
        std::cerr << "wrote synthetic ratings to " << synth_out << "\n";
      }
      return 0;
    }

    if (bench->parsed()) {
      gcx::ExperimentConfig cfg = resolve_config(bench_flags);
      if (!bench_sizes.empty()) cfg.group_sizes = bench_sizes;
      if (bench_groups > 0) cfg.groups_per_size = bench_groups;
      if (!bench_methods.empty()) {
        cfg.methods.clear();
        for (const auto& name : bench_methods) cfg.methods.push_back(method_from_name(name));
      }
      if (!bench_pareto.empty()) {
        if (bench_pareto == "on") cfg.pareto_filter = gcx::ParetoMode::On;
        else if (bench_pareto == "off") cfg.pareto_filter = gcx::ParetoMode::Off;
        else if (bench_pareto == "both") cfg.pareto_filter = gcx::ParetoMode::Both;
        else throw gcx::ConfigError("--pareto must be on, off or both");
      }
      if (bench_workers > 0) cfg.workers = bench_workers;
      return run_bench(cfg, bench_out, bench_summary);
    }

    if (explain->parsed()) {
      gcx::ExperimentConfig cfg = resolve_config(explain_flags);
      gcx::RatingsDataset ds = gcx::load_dataset(cfg, &std::cerr);

      gcx::ExplainRequest request;
      request.members = parse_members(explain_members);
      if (explain_target != "top1") request.target = std::stoll(explain_target);
      if (!explain_methods.empty()) {
        request.methods.clear();
        for (const auto& name : explain_methods) request.methods.push_back(method_from_name(name));
      }
      request.pareto_preprocess = explain_pareto;
      request.record_trace = !trace_path.empty();

      if (!metrics_csv.empty()) {
        gcx::Group group = gcx::Group::make(ds, request.members, cfg.min_ratings);
        gcx::CfRecommender rec(ds, cfg.k_neighbors);
        gcx::RecommendationList factual =
            gcx::factual_list(ds, rec, group, cfg.list_length);
        if (!factual.empty()) {
          gcx::CallMeter meter = gcx::CallMeter::unlimited();
          auto vectors =
              gcx::build_metric_vectors(ds, rec, group, factual.item_at(1), meter);
          std::ofstream out(metrics_csv);
          if (!out) throw gcx::ConfigError("cannot write " + metrics_csv);
          gcx::write_metric_csv(out, vectors);
        }
      }

      gcx::ExplainResult result = gcx::explain_once(ds, cfg, request);
      std::cout << result.text;

      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw gcx::ConfigError("cannot write " + trace_path);
        for (const auto& [method, trace] : result.traces) {
          for (const auto& record : trace) {
            nlohmann::json line = {{"step", record.step},
                                   {"method", gcx::to_string(method)},
                                   {"set_size", record.set_size},
                                   {"cf_found", record.cf_found},
                                   {"rank_of_t", record.rank_of_target}};
            out << line.dump() << "\n";
          }
        }
      }
      return static_cast<int>(result.status);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
