#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fantasy/contest.hpp"
#include "fantasy/dynamics.hpp"
#include "fantasy/ingestion.hpp"
#include "fantasy/metrics.hpp"
#include "fantasy/scoring.hpp"
#include "fantasy/strategy.hpp"

namespace fantasy::report {

inline constexpr int kSchemaVersion = 1;

struct DatasetSource {
  /// Both set for file input.
  std::optional<std::filesystem::path> scorecards;
  std::optional<std::filesystem::path> careers;
  /// Set for a synthetic tournament.
  std::optional<FixtureConfig> fixture;
  /// Whether the fixture named its own seed; otherwise the master seed is used.
  bool fixture_seed_explicit = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  DatasetSource dataset;
  ScoringRules scoring;
  StrategyParams params;
  std::vector<ContestKind> contests = {ContestKind::Mega, ContestKind::FourX};
  int agents_per_strategy = 100;
  std::vector<StrategyId> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  PayoffAggregation payoff_aggregation = PayoffAggregation::MatchLevel;
  std::vector<std::vector<StrategyId>> subsets = default_subsets();
  int subset_runs = 6;
  int dynamics_iterations = 100;
  int dynamics_repeats = 6;
  double dynamics_temperature = 25.0;
  ContestKind dynamics_contest = ContestKind::Mega;
  int top_k = 6;

  /// Replaces the master seed, and the fixture seed unless the fixture set one.
  void override_seed(std::uint64_t seed);
  /// Throws ConfigError on out-of-range values or missing dataset files.
  void validate() const;
  FixtureConfig fixture_or_default() const;
};

/// Parses the JSON config text. Relative paths resolve against `base_dir`.
/// Unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Reads the files or generates the fixture named by the config.
LoadedDataset load_experiment_dataset(const ExperimentConfig& config);

/// Child seeds of the master seed, one per command.
std::uint64_t simulate_seed(const ExperimentConfig& config);
std::uint64_t dynamics_seed(const ExperimentConfig& config);
std::uint64_t subsets_seed(const ExperimentConfig& config);

std::string_view to_string(PayoffAggregation aggregation) noexcept;

}  // namespace fantasy::report
