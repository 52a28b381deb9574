#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fantasy/report/config.hpp"

namespace fantasy::report {

struct CommandOutput {
  /// Files written, in write order.
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Runs every match as a contest under each configured payoff kind and writes
/// contest results, match summaries, the metric matrix, the Average 4 ranking,
/// and payoff summaries into config.output_dir.
CommandOutput cmd_simulate(const ExperimentConfig& config);

/// Writes the dynamic-tournament history, the top-k count series and a summary.
CommandOutput cmd_dynamics(const ExperimentConfig& config);

/// Writes the uniformly-better report for each configured subset.
CommandOutput cmd_subsets(const ExperimentConfig& config);

/// Writes the fixture dataset (scorecards.jsonl, careers.csv).
CommandOutput cmd_gen_fixture(const ExperimentConfig& config);

}  // namespace fantasy::report
