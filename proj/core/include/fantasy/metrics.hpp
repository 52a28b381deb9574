#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fantasy/contest.hpp"
#include "fantasy/strategy.hpp"

namespace fantasy {

struct StrategySummary {
  StrategyId strategy = StrategyId::Random1;
  int agents = 0;
  double average_rank = 0;
  double average_points = 0;
  int best_rank = 0;
};

struct MatchSummary {
  std::string match_id;
  /// One entry per requested strategy that had agents, in request order.
  std::vector<StrategySummary> strategies;
  /// Strategy of the rank-1 agent.
  StrategyId winner = StrategyId::Random1;
};

/// Mean rank, mean points and best (numerically smallest) rank per strategy.
/// Strategies with no agents in the contest are skipped and reported through
/// `warnings` when given.
MatchSummary match_strategy_summary(const ContestResult& result, std::span<const StrategyId> strategies,
                                    std::vector<std::string>* warnings = nullptr);

enum class Metric : std::uint8_t {
  WinPctBestRank = 0,
  WinPctAverageRank,
  MeanAveragePoints,
  MedianAveragePoints,
  MeanAverageRank,
  MedianAverageRank,
  MeanBestRank,
  MedianBestRank,
};

inline constexpr std::size_t kMetricCount = 8;

std::string_view to_string(Metric metric) noexcept;
/// Lower raw value is better (the four rank columns).
bool rank_oriented(Metric metric) noexcept;

struct MetricMatrix {
  std::vector<StrategyId> strategies;
  /// Per strategy, indexed by Metric.
  std::vector<std::array<double, kMetricCount>> raw;
  /// Filled by normalize_metric_matrix; higher is better in every column.
  std::vector<std::array<double, kMetricCount>> normalized;
  int matches = 0;

  double raw_at(std::size_t row, Metric m) const { return raw[row][static_cast<std::size_t>(m)]; }
  double normalized_at(std::size_t row, Metric m) const { return normalized[row][static_cast<std::size_t>(m)]; }
};

/// The eight tournament metrics over M match summaries. Win%(Best Rank)
/// credits the strategy of each match's rank-1 agent; Win%(Average Rank)
/// credits a strategy only when its average rank is the strict unique minimum.
/// Throws ParameterError when `matches` is empty.
MetricMatrix eight_metric_matrix(std::span<const MatchSummary> matches, std::span<const StrategyId> strategies);

/// x' = (x - (min - 1)) / (max - min + 2), then x'' = 1 - x' for rank columns.
double normalize_value(double x, double column_min, double column_max, bool flip) noexcept;

/// Returns a copy of `raw` with the normalized cells filled.
MetricMatrix normalize_metric_matrix(MetricMatrix raw);

struct RankedStrategy {
  StrategyId strategy;
  double score;
};

/// Mean of the normalized Win%(Best Rank), Win%(Average Rank),
/// Mean(Average Points) and Mean(Best Rank) cells; best first, ties by name.
std::vector<RankedStrategy> average4_ranking(const MetricMatrix& normalized);

/// Order statistics with Tukey's hinges (median of each half, the median
/// included in both halves when n is odd).
struct Quantiles {
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;
  double mean = 0;
  std::size_t count = 0;
};

/// Throws ParameterError on an empty sample.
Quantiles summarize(std::vector<double> values);
double median_of(std::vector<double> values);

enum class PayoffAggregation {
  /// Per-match statistics first, then mean of means / median of medians.
  MatchLevel,
  /// All agent-match payoffs pooled into one sample.
  Pooled,
};

struct PlayerPayoffSummary {
  StrategyId strategy;
  /// Over each agent's season-total net payoff.
  Quantiles totals;
};

struct StrategyPayoffSummary {
  StrategyId strategy;
  int matches = 0;
  double mean = 0;
  double median = 0;
  double min = 0;
  double max = 0;
};

struct PayoffSummary {
  std::vector<PlayerPayoffSummary> player_specific;
  std::vector<StrategyPayoffSummary> strategy_specific;
};

/// Player- and strategy-specific payoff summaries over a season of contests
/// with a fixed roster.
PayoffSummary payoff_summaries(std::span<const ContestResult> contests, std::span<const StrategyId> strategies,
                               PayoffAggregation aggregation = PayoffAggregation::MatchLevel);

struct SubsetReport {
  std::vector<StrategyId> members;
  /// Aggregated over all runs, per member.
  std::vector<double> win_pct_best_rank;
  std::vector<double> win_pct_average_rank;
  /// (better, worse) pairs where the first beats the second on both metrics.
  std::vector<std::pair<StrategyId, StrategyId>> uniformly_better;
  /// Member uniformly better than every other member, if one exists.
  std::optional<StrategyId> dominant;
  int runs = 0;
  int matches_per_run = 0;
};

struct SubsetCompetitionConfig {
  std::vector<std::vector<StrategyId>> subsets;
  int runs = 6;
  int agents_per_strategy = 100;
  std::uint64_t seed = 0;
};

/// The four similarity subsets: chance-only variable strategies,
/// data-driven variable strategies, form-based deterministic strategies,
/// career/MCDM deterministic strategies.
std::vector<std::vector<StrategyId>> default_subsets();

/// Decides the uniformly-better relation from aggregated win percentages.
void rank_subset(SubsetReport& report);

/// Simulates each subset's strategies alone over the season `runs` times and
/// reports the uniformly-better relation. Throws ConfigError on a subset with
/// fewer than two strategies or runs < 1.
std::vector<SubsetReport> subset_competition(std::span<const MatchScorecard> matches,
                                             const SimulationInputs& inputs, const SubsetCompetitionConfig& config);

}  // namespace fantasy
