#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fantasy/history.hpp"
#include "fantasy/mcdm.hpp"
#include "fantasy/rng.hpp"
#include "fantasy/scoring.hpp"
#include "fantasy/types.hpp"

namespace fantasy {

enum class StrategyId : std::uint8_t {
  Random1 = 0,
  FavTeam,
  AllrounderSelectAll,
  MA5,
  CareerAverages,
  TournamentStats,
  CareerPoints,
  Random2,
  MA1,
  AllrounderPref,
  MeanVarOptimization,
  TopsisSynthesis,
  TopsisAHP,
  TopsisShannon,
  PopularitySelection,
};

inline constexpr std::size_t kStrategyCount = 15;

constexpr std::size_t strategy_index(StrategyId s) noexcept { return static_cast<std::size_t>(s); }

inline constexpr std::array<StrategyId, kStrategyCount> kAllStrategies = {
    StrategyId::Random1,         StrategyId::FavTeam,         StrategyId::AllrounderSelectAll,
    StrategyId::MA5,             StrategyId::CareerAverages,  StrategyId::TournamentStats,
    StrategyId::CareerPoints,    StrategyId::Random2,         StrategyId::MA1,
    StrategyId::AllrounderPref,  StrategyId::MeanVarOptimization, StrategyId::TopsisSynthesis,
    StrategyId::TopsisAHP,       StrategyId::TopsisShannon,   StrategyId::PopularitySelection};

struct StrategyTraits {
  bool deterministic = false;  // false: variable
  bool learning = false;
};

StrategyTraits traits(StrategyId strategy) noexcept;
std::string_view strategy_name(StrategyId strategy) noexcept;
/// Accepts the canonical names ("CareerAverages") and spaced/underscored
/// variants ("Career_averages", "Random 1"), case-insensitively.
std::optional<StrategyId> parse_strategy(std::string_view name);

enum class TopsisMetric { BattingAverage, StrikeRate, Runs, Boundaries, Wickets, Economy };

std::string_view to_string(TopsisMetric metric) noexcept;
std::optional<TopsisMetric> parse_topsis_metric(std::string_view name);

struct TopsisCriterion {
  TopsisMetric metric;
  Orientation orientation;

  bool operator==(const TopsisCriterion&) const = default;
};

struct StrategyParams {
  int ma5_window = 5;
  int ma1_window = 1;
  int mean_var_window = 3;
  /// Penalty on form variance for MeanVarOptimization.
  double risk_aversion = 0.5;
  int allrounder_min = 3;
  int random2_batter_min = 2;
  /// Players FavTeam takes from its favourite side.
  int fav_team_majority = 10;
  /// Form assigned to players with no appearances yet.
  double fallback_form = 0.0;

  /// TOPSIS criteria per role group, computed from the season so far.
  std::vector<TopsisCriterion> batting_criteria = {
      {TopsisMetric::BattingAverage, Orientation::Benefit}, {TopsisMetric::StrikeRate, Orientation::Benefit}};
  std::vector<TopsisCriterion> bowling_criteria = {
      {TopsisMetric::Wickets, Orientation::Benefit}, {TopsisMetric::Economy, Orientation::Cost}};
  std::vector<TopsisCriterion> allrounder_criteria = {
      {TopsisMetric::BattingAverage, Orientation::Benefit}, {TopsisMetric::StrikeRate, Orientation::Benefit},
      {TopsisMetric::Wickets, Orientation::Benefit}, {TopsisMetric::Economy, Orientation::Cost}};
  /// Pairwise comparison matrices for AHP weighting; empty means all-ones.
  Matrix ahp_batting;
  Matrix ahp_bowling;
  Matrix ahp_allrounder;

  ConstraintSet base_constraints;

  /// Throws ParameterError on windows < 1, negative risk aversion, an
  /// infeasible constraint set, or an AHP matrix that does not match its
  /// criteria list or is not reciprocal.
  void validate() const;
};

/// Constraint set a strategy selects under: the base set, with the batter
/// minimum raised for Random2 and the allrounder minimum for AllrounderPref.
ConstraintSet constraints_for(StrategyId strategy, const StrategyParams& params);

struct MatchInfo {
  std::string match_id;
  std::string team_a;
  std::string team_b;
};

/// Running count of how many already-entered teams contain each player.
class PopularityTally {
 public:
  static PopularityTally from(std::span<const FantasyTeam> entries);

  void add(const FantasyTeam& team);
  int count(std::string_view player_id) const;
  int entries() const noexcept { return entries_; }

 private:
  std::map<std::string, int, std::less<>> counts_;
  int entries_ = 0;
};

/// What an agent may see when picking: the pool and public information, never
/// the current match's stats.
struct MatchContext {
  const MatchInfo& match;
  std::span<const PlayerRecord> pool;
  const SeasonHistory& history;
  const CareerTable& careers;
  const PopularityTally& prior_entries;
  const ScoringRules& rules;
};

/// Builds a team for `strategy`. Deterministic strategies never touch `rng`.
/// Throws InfeasibleError when the pool cannot satisfy the strategy's
/// constraint set.
FantasyTeam select_team(StrategyId strategy, const MatchContext& ctx, const StrategyParams& params,
                        Rng& rng);

/// Per-pool-player TOPSIS closeness within each role group (batters and
/// keepers, bowlers, allrounders) under the weighting scheme of one of the
/// three TOPSIS strategies.
std::vector<double> topsis_scores(StrategyId scheme, const MatchContext& ctx, const StrategyParams& params);

}  // namespace fantasy
