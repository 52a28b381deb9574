#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fantasy/history.hpp"
#include "fantasy/strategy.hpp"
#include "fantasy/types.hpp"

namespace fantasy {

using Money = std::int64_t;

struct PrizeBand {
  int rank_lo = 1;
  int rank_hi = 1;
  Money prize = 0;

  bool operator==(const PrizeBand&) const = default;
};

struct PayoffStructure {
  std::string name;
  Money entry_fee = 0;
  std::vector<PrizeBand> bands;

  int capacity() const noexcept { return bands.empty() ? 0 : bands.back().rank_hi; }
  Money prize_pool() const noexcept;
  /// Number of ranks paid a positive prize.
  int paid_ranks() const noexcept;
  /// Throws StructureError when rank is outside 1..capacity.
  Money prize_for_rank(int rank) const;
  /// Throws StructureError unless bands are contiguous from rank 1, non-empty,
  /// non-overlapping, and prizes are non-negative and non-increasing.
  void validate() const;

  bool operator==(const PayoffStructure&) const = default;
};

enum class ContestKind { Mega, FourX };

std::string_view to_string(ContestKind kind) noexcept;
std::optional<ContestKind> parse_contest_kind(std::string_view name);

/// The Mega (fee 500, top-heavy bands) and 4x-or-Nothing (fee 100, top 300
/// of 1500 win 400) prize tables.
PayoffStructure make_payoff_structure(ContestKind kind);

/// Ranks by points descending; equal points go to the earlier entry. Returns
/// rank per input position (1-based).
std::vector<int> rank_agents(std::span<const double> points, std::span<const int> entry_order);

/// Net payoff (band prize minus entry fee) per rank. Throws StructureError for
/// ranks beyond capacity.
std::vector<Money> assign_payoffs(std::span<const int> ranks, const PayoffStructure& structure);

struct AgentOutcome {
  int agent_id = 0;
  StrategyId strategy = StrategyId::Random1;
  int entry_order = 0;
  FantasyTeam team;
  double points = 0;
  int rank = 0;
  Money prize = 0;
  Money net_payoff = 0;
};

struct ContestResult {
  std::string match_id;
  std::string structure;
  /// Indexed by agent_id.
  std::vector<AgentOutcome> agents;

  Money total_net_payoff() const noexcept;
  Money total_prizes() const noexcept;
};

/// Re-prices a ranked contest under another payoff structure.
void apply_payoffs(ContestResult& result, const PayoffStructure& structure);

/// Everything static a contest needs besides the match and the roster.
struct SimulationInputs {
  PlayerDirectory players;
  CareerTable careers;
  ScoringRules rules;
  StrategyParams params;

  static SimulationInputs from(const TournamentDataset& dataset, ScoringRules rules = {},
                               StrategyParams params = {});
};

/// Agent roster: strategy of each agent, indexed by agent_id.
using Roster = std::vector<StrategyId>;

/// Agents grouped by strategy in strategy order: counts[i] agents of strategy i.
Roster make_roster(std::span<const int> counts_per_strategy);
/// `per_strategy` agents for each listed strategy.
Roster make_roster(std::span<const StrategyId> strategies, int per_strategy);

/// One contest on one match. Entry order is a uniform permutation drawn from
/// `contest_seed`; agents pick in entry order (so popularity sees earlier
/// entries), each from its own stream derive_seed(contest_seed, {agent_id}).
/// Deterministic strategies are evaluated once per contest and shared.
ContestResult run_contest(const MatchScorecard& match, const SimulationInputs& inputs,
                          const SeasonHistory& history, const Roster& roster,
                          const PayoffStructure& structure, std::uint64_t contest_seed);

/// Runs `sequence` in order as a season: the contest at position k sees the
/// scored matches at positions 0..k-1 as history. Contest seeds are
/// derive_seed(season_seed, {k}).
std::vector<ContestResult> run_season(std::span<const MatchScorecard* const> sequence,
                                      const SimulationInputs& inputs, const Roster& roster,
                                      const PayoffStructure& structure, std::uint64_t season_seed);

/// Convenience overload over a chronological match list.
std::vector<ContestResult> run_season(std::span<const MatchScorecard> matches, const SimulationInputs& inputs,
                                      const Roster& roster, const PayoffStructure& structure,
                                      std::uint64_t season_seed);

}  // namespace fantasy
