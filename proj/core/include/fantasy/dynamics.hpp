#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fantasy/contest.hpp"
#include "fantasy/rng.hpp"
#include "fantasy/strategy.hpp"

namespace fantasy {

/// `n` uniform draws with replacement; returns indices into the match list.
std::vector<std::size_t> bootstrap_sample(std::size_t match_count, std::size_t n, Rng& rng);

/// w_i = exp(x_i / tau) / sum_j exp(x_j / tau), evaluated with the maximum
/// subtracted. Throws ParameterError for tau <= 0 or an empty input.
std::vector<double> softmax_reweight(std::span<const double> x, double temperature);

/// Largest-remainder apportionment of `total` over `weights`: floor shares
/// first, then one extra to the largest remainders (ties to the lower index).
/// Throws ParameterError unless the weights are non-negative and sum to 1
/// within 1e-9.
std::vector<int> allocate_agents(std::span<const double> weights, int total);

struct DynamicsConfig {
  int iterations = 100;
  int repeats = 6;
  double temperature = 25.0;
  /// Burn-in puts this many agents on each of the 14 non-popularity
  /// strategies; later iterations distribute 15 times this many.
  int agents_per_strategy = 100;
  std::uint64_t seed = 0;

  /// Throws ConfigError on iterations/repeats < 1, tau <= 0, or fewer agents
  /// than strategies.
  void validate() const;
  int burn_in_total() const noexcept { return agents_per_strategy * static_cast<int>(kStrategyCount - 1); }
  int total_agents() const noexcept { return agents_per_strategy * static_cast<int>(kStrategyCount); }
};

using StrategyCounts = std::array<int, kStrategyCount>;
using StrategyWeights = std::array<double, kStrategyCount>;

struct RepeatRecord {
  /// Match ids of the bootstrap season, in sequence order.
  std::vector<std::string> season;
  /// Agents per strategy whose season-total net payoff is strictly positive.
  StrategyCounts positive{};
  StrategyWeights weights{};
};

struct IterationRecord {
  int iteration = 0;  // 0 is burn-in
  StrategyCounts counts{};
  std::vector<RepeatRecord> repeats;
  /// Mean of the repeat weight vectors.
  StrategyWeights weights{};
  StrategyCounts next_counts{};
};

struct DynamicsResult {
  std::vector<IterationRecord> history;
  /// First iteration whose entering population has one strategy above 50%.
  std::optional<int> first_majority_iteration;
};

/// Simulates one bootstrap season for the given population and returns
/// the positive-payoff count per strategy.
RepeatRecord run_dynamics_repeat(std::span<const MatchScorecard> matches, const SimulationInputs& inputs,
                                 const StrategyCounts& counts, const PayoffStructure& structure,
                                 double temperature, std::uint64_t repeat_seed);

/// Burn-in (14 strategies x agents_per_strategy, popularity absent) followed
/// by `iterations` reweighted iterations at 15 x agents_per_strategy. Each
/// iteration runs `repeats` independent bootstrap seasons, averages their
/// softmax weights, and apportions the next population.
DynamicsResult run_dynamic_tournament(std::span<const MatchScorecard> matches, const SimulationInputs& inputs,
                                      const DynamicsConfig& config, const PayoffStructure& structure);

/// Strategies ordered by their count in the final record (ties to the lower
/// index), truncated to k.
std::vector<StrategyId> top_strategies(const DynamicsResult& result, std::size_t k);

}  // namespace fantasy
