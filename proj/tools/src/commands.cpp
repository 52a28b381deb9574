#include "fantasy/report/commands.hpp"

#include <fstream>

#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "fantasy/report/writers.hpp"
#include "json.hpp"

namespace fantasy::report {

namespace {

using Json = nlohmann::ordered_json;

class OutputDir {
 public:
  explicit OutputDir(const std::filesystem::path& dir) : dir_(dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory {}: {}", dir_.string(), ec.message()));
  }

  template <class Writer>
  void write(const std::string& name, Writer&& writer) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
    writer(out);
    out.flush();
    if (!out) throw ConfigError(fmt::format("write failed: {}", path.string()));
    result.files.push_back(path);
  }

  void table(const std::string& name, const CsvTable& t) {
    write(name, [&](std::ostream& o) { write_csv(o, t); });
  }

  void json(const std::string& name, const Json& j) {
    write(name, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }

  CommandOutput result;

 private:
  std::filesystem::path dir_;
};

Json strategy_names(std::span<const StrategyId> strategies) {
  Json out = Json::array();
  for (auto s : strategies) out.push_back(strategy_name(s));
  return out;
}

SimulationInputs inputs_for(const ExperimentConfig& config, const TournamentDataset& dataset) {
  return SimulationInputs::from(dataset, config.scoring, config.params);
}

}  // namespace

CommandOutput cmd_simulate(const ExperimentConfig& config) {
  config.validate();
  auto loaded = load_experiment_dataset(config);
  const auto& dataset = loaded.dataset;
  if (dataset.matches.empty()) throw ConfigError("dataset has no matches");
  const auto inputs = inputs_for(config, dataset);
  const auto roster = make_roster(config.strategies, config.agents_per_strategy);

  // Ranking is independent of the payoff table, so the season is simulated
  // once at the largest capacity and re-priced per kind.
  std::vector<PayoffStructure> structures;
  for (auto kind : config.contests) {
    structures.push_back(make_payoff_structure(kind));
    if (static_cast<int>(roster.size()) > structures.back().capacity()) {
      throw ConfigError(fmt::format("{} agents exceed the {} capacity of {}", roster.size(), to_string(kind),
                                    structures.back().capacity()));
    }
  }
  auto season = run_season(std::span<const MatchScorecard>(dataset.matches), inputs, roster, structures.front(),
                           simulate_seed(config));

  OutputDir out(config.output_dir);
  out.result.warnings = loaded.warnings;

  std::vector<MatchSummary> summaries;
  for (const auto& contest : season) {
    summaries.push_back(match_strategy_summary(contest, config.strategies, &out.result.warnings));
  }
  const auto matrix = normalize_metric_matrix(eight_metric_matrix(summaries, config.strategies));
  const auto ranking = average4_ranking(matrix);

  for (std::size_t k = 0; k < config.contests.size(); ++k) {
    if (k > 0) {
      for (auto& contest : season) apply_payoffs(contest, structures[k]);
    }
    const std::string kind(to_string(config.contests[k]));
    out.write(fmt::format("contest_results_{}.jsonl", kind),
              [&](std::ostream& o) { write_contest_results(o, season); });
    const auto payoffs = payoff_summaries(season, config.strategies, config.payoff_aggregation);
    out.table(fmt::format("payoff_player_{}.csv", kind), player_payoff_table(payoffs.player_specific));
    out.table(fmt::format("payoff_strategy_{}.csv", kind), strategy_payoff_table(payoffs.strategy_specific));
  }
  out.table("match_summaries.csv", match_summary_table(summaries));
  out.table("metrics.csv", metrics_table(matrix));
  out.table("average4.csv", average4_table(ranking));

  Json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["command"] = "simulate";
  summary["seed"] = config.seed;
  summary["matches"] = dataset.matches.size();
  summary["players"] = dataset.players.size();
  summary["agents_per_strategy"] = config.agents_per_strategy;
  summary["strategies"] = strategy_names(config.strategies);
  Json kinds = Json::array();
  for (auto k : config.contests) kinds.push_back(to_string(k));
  summary["contests"] = std::move(kinds);
  summary["payoff_aggregation"] = to_string(config.payoff_aggregation);
  Json top = Json::array();
  for (const auto& r : ranking) top.push_back({{"strategy", strategy_name(r.strategy)}, {"score", r.score}});
  summary["average4"] = std::move(top);
  summary["notes"] = Json::array(
      {"Learning strategies see no in-season history before the first match and fall back to fallback_form.",
       "Matches are simulated once; every contest kind re-prices the same ranking."});
  summary["warnings"] = out.result.warnings;
  out.json("summary.json", summary);
  return out.result;
}

CommandOutput cmd_dynamics(const ExperimentConfig& config) {
  config.validate();
  auto loaded = load_experiment_dataset(config);
  const auto& dataset = loaded.dataset;
  const auto inputs = inputs_for(config, dataset);

  DynamicsConfig dc;
  dc.iterations = config.dynamics_iterations;
  dc.repeats = config.dynamics_repeats;
  dc.temperature = config.dynamics_temperature;
  dc.agents_per_strategy = config.agents_per_strategy;
  dc.seed = dynamics_seed(config);
  const auto result = run_dynamic_tournament(std::span<const MatchScorecard>(dataset.matches), inputs, dc,
                                             make_payoff_structure(config.dynamics_contest));
  const auto top = top_strategies(result, static_cast<std::size_t>(config.top_k));

  OutputDir out(config.output_dir);
  out.result.warnings = loaded.warnings;
  out.write("dynamics_history.jsonl", [&](std::ostream& o) { write_dynamics_history(o, result.history); });
  out.table("dynamics_series.csv", dynamics_series_table(result.history, top));

  Json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["command"] = "dynamics";
  summary["seed"] = config.seed;
  summary["contest"] = to_string(config.dynamics_contest);
  summary["iterations"] = dc.iterations;
  summary["repeats"] = dc.repeats;
  summary["temperature"] = dc.temperature;
  summary["burn_in_agents"] = dc.burn_in_total();
  summary["total_agents"] = dc.total_agents();
  summary["top_k"] = strategy_names(top);
  summary["first_majority_iteration"] =
      result.first_majority_iteration ? Json(*result.first_majority_iteration) : Json("none");
  Json final_counts = Json::object();
  for (auto s : kAllStrategies) {
    final_counts[std::string(strategy_name(s))] = result.history.back().counts[strategy_index(s)];
  }
  summary["final_counts"] = std::move(final_counts);
  summary["warnings"] = out.result.warnings;
  out.json("dynamics_summary.json", summary);
  return out.result;
}

CommandOutput cmd_subsets(const ExperimentConfig& config) {
  config.validate();
  auto loaded = load_experiment_dataset(config);
  const auto inputs = inputs_for(config, loaded.dataset);
  SubsetCompetitionConfig sc;
  sc.subsets = config.subsets;
  sc.runs = config.subset_runs;
  sc.agents_per_strategy = config.agents_per_strategy;
  sc.seed = subsets_seed(config);
  const auto reports = subset_competition(std::span<const MatchScorecard>(loaded.dataset.matches), inputs, sc);

  OutputDir out(config.output_dir);
  out.result.warnings = loaded.warnings;
  out.write("subsets.json", [&](std::ostream& o) { write_subsets_json(o, reports); });
  out.table("subsets.csv", subsets_table(reports));
  return out.result;
}

CommandOutput cmd_gen_fixture(const ExperimentConfig& config) {
  if (config.dataset.scorecards) throw ConfigError("gen-fixture needs a fixture dataset section, not files");
  const auto dataset = generate_fixture(config.fixture_or_default());
  OutputDir out(config.output_dir);
  out.write("scorecards.jsonl", [&](std::ostream& o) { write_scorecards(o, dataset); });
  out.write("careers.csv", [&](std::ostream& o) { write_careers(o, dataset.careers); });
  return out.result;
}

}  // namespace fantasy::report
