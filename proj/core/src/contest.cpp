#include "fantasy/contest.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "fantasy/team.hpp"

namespace fantasy {

namespace {

constexpr std::uint64_t kEntryOrderStream = 0x656e7472794f7264ULL;

}  // namespace

Money PayoffStructure::prize_pool() const noexcept {
  Money pool = 0;
  for (const auto& b : bands) pool += static_cast<Money>(b.rank_hi - b.rank_lo + 1) * b.prize;
  return pool;
}

int PayoffStructure::paid_ranks() const noexcept {
  int n = 0;
  for (const auto& b : bands) {
    if (b.prize > 0) n += b.rank_hi - b.rank_lo + 1;
  }
  return n;
}

Money PayoffStructure::prize_for_rank(int rank) const {
  for (const auto& b : bands) {
    if (rank >= b.rank_lo && rank <= b.rank_hi) return b.prize;
  }
  throw StructureError(fmt::format("{}: rank {} outside 1..{}", name, rank, capacity()));
}

void PayoffStructure::validate() const {
  if (bands.empty()) throw StructureError(fmt::format("{}: no prize bands", name));
  if (entry_fee < 0) throw StructureError(fmt::format("{}: negative entry fee", name));
  int expect = 1;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    if (b.rank_lo != expect || b.rank_hi < b.rank_lo) {
      throw StructureError(fmt::format("{}: band {} ({}-{}) is not contiguous from rank {}", name, i, b.rank_lo,
                                       b.rank_hi, expect));
    }
    if (b.prize < 0) throw StructureError(fmt::format("{}: negative prize in band {}", name, i));
    if (i > 0 && b.prize > bands[i - 1].prize) {
      throw StructureError(fmt::format("{}: prize increases at band {}", name, i));
    }
    expect = b.rank_hi + 1;
  }
}

std::string_view to_string(ContestKind kind) noexcept { return kind == ContestKind::Mega ? "mega" : "fourx"; }

std::optional<ContestKind> parse_contest_kind(std::string_view name) {
  if (name == "mega") return ContestKind::Mega;
  if (name == "fourx" || name == "4x") return ContestKind::FourX;
  return std::nullopt;
}

PayoffStructure make_payoff_structure(ContestKind kind) {
  if (kind == ContestKind::FourX) {
    return {"fourx", 100, {{1, 300, 400}, {301, 1500, 0}}};
  }
  return {"mega",
          500,
          {{1, 1, 50000},
           {2, 2, 10000},
           {3, 3, 5000},
           {4, 4, 2000},
           {5, 5, 1000},
           {6, 10, 800},
           {11, 25, 625},
           {26, 50, 575},
           {51, 100, 540},
           {101, 300, 515},
           {301, 599, 505},
           {600, 900, 500},
           {901, 1500, 0}}};
}

std::vector<int> rank_agents(std::span<const double> points, std::span<const int> entry_order) {
  if (points.size() != entry_order.size()) throw ParameterError("rank_agents: size mismatch");
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a] != points[b]) return points[a] > points[b];
    return entry_order[a] < entry_order[b];
  });
  std::vector<int> rank(points.size());
  for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = static_cast<int>(r + 1);
  return rank;
}

std::vector<Money> assign_payoffs(std::span<const int> ranks, const PayoffStructure& structure) {
  std::vector<Money> net(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) net[i] = structure.prize_for_rank(ranks[i]) - structure.entry_fee;
  return net;
}

Money ContestResult::total_net_payoff() const noexcept {
  Money total = 0;
  for (const auto& a : agents) total += a.net_payoff;
  return total;
}

Money ContestResult::total_prizes() const noexcept {
  Money total = 0;
  for (const auto& a : agents) total += a.prize;
  return total;
}

void apply_payoffs(ContestResult& result, const PayoffStructure& structure) {
  for (auto& a : result.agents) {
    a.prize = structure.prize_for_rank(a.rank);
    a.net_payoff = a.prize - structure.entry_fee;
  }
  result.structure = structure.name;
}

SimulationInputs SimulationInputs::from(const TournamentDataset& dataset, ScoringRules rules,
                                        StrategyParams params) {
  rules.validate();
  params.validate();
  return {PlayerDirectory(dataset.players), index_careers(dataset.careers), rules, std::move(params)};
}

Roster make_roster(std::span<const int> counts_per_strategy) {
  if (counts_per_strategy.size() > kStrategyCount) throw ParameterError("make_roster: too many strategies");
  Roster roster;
  for (std::size_t s = 0; s < counts_per_strategy.size(); ++s) {
    if (counts_per_strategy[s] < 0) throw ParameterError("make_roster: negative agent count");
    roster.insert(roster.end(), static_cast<std::size_t>(counts_per_strategy[s]), kAllStrategies[s]);
  }
  return roster;
}

Roster make_roster(std::span<const StrategyId> strategies, int per_strategy) {
  if (per_strategy < 0) throw ParameterError("make_roster: negative agent count");
  Roster roster;
  for (StrategyId s : strategies) roster.insert(roster.end(), static_cast<std::size_t>(per_strategy), s);
  return roster;
}

ContestResult run_contest(const MatchScorecard& match, const SimulationInputs& inputs,
                          const SeasonHistory& history, const Roster& roster,
                          const PayoffStructure& structure, std::uint64_t contest_seed) {
  if (static_cast<int>(roster.size()) > structure.capacity()) {
    throw StructureError(fmt::format("{}: {} agents exceed capacity {}", structure.name, roster.size(),
                                     structure.capacity()));
  }
  const auto pool = build_selection_pool(match, inputs.players);
  const MatchInfo info{match.match_id, match.team_a, match.team_b};
  PopularityTally tally;
  const MatchContext ctx{info, pool, history, inputs.careers, tally, inputs.rules};

  const auto n = roster.size();
  std::vector<int> by_entry(n);
  std::iota(by_entry.begin(), by_entry.end(), 0);
  Rng order_rng(derive_seed(contest_seed, {kEntryOrderStream}));
  order_rng.shuffle(by_entry.begin(), by_entry.end());

  ContestResult result;
  result.match_id = match.match_id;
  result.structure = structure.name;
  result.agents.resize(n);
  std::array<std::optional<FantasyTeam>, kStrategyCount> shared;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const int agent = by_entry[pos];
    const StrategyId strategy = roster[static_cast<std::size_t>(agent)];
    auto& out = result.agents[static_cast<std::size_t>(agent)];
    out.agent_id = agent;
    out.strategy = strategy;
    out.entry_order = static_cast<int>(pos + 1);
    if (traits(strategy).deterministic) {
      auto& cached = shared[strategy_index(strategy)];
      if (!cached) {
        Rng unused(0);
        cached = select_team(strategy, ctx, inputs.params, unused);
      }
      out.team = *cached;
    } else {
      Rng rng(derive_seed(contest_seed, {static_cast<std::uint64_t>(agent)}));
      out.team = select_team(strategy, ctx, inputs.params, rng);
    }
    tally.add(out.team);
  }

  const auto points_table = build_match_point_table(match, inputs.players, inputs.rules);
  std::vector<double> points(n);
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i] = score_team(result.agents[i].team, points_table);
    order[i] = result.agents[i].entry_order;
    result.agents[i].points = points[i];
  }
  const auto ranks = rank_agents(points, order);
  for (std::size_t i = 0; i < n; ++i) result.agents[i].rank = ranks[i];
  apply_payoffs(result, structure);
  return result;
}

std::vector<ContestResult> run_season(std::span<const MatchScorecard* const> sequence,
                                      const SimulationInputs& inputs, const Roster& roster,
                                      const PayoffStructure& structure, std::uint64_t season_seed) {
  SeasonHistory history(inputs.rules);
  std::vector<ContestResult> results;
  results.reserve(sequence.size());
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    results.push_back(run_contest(*sequence[k], inputs, history, roster, structure,
                                  derive_seed(season_seed, {static_cast<std::uint64_t>(k)})));
    history.append(*sequence[k], inputs.players);
  }
  return results;
}

std::vector<ContestResult> run_season(std::span<const MatchScorecard> matches, const SimulationInputs& inputs,
                                      const Roster& roster, const PayoffStructure& structure,
                                      std::uint64_t season_seed) {
  std::vector<const MatchScorecard*> sequence;
  sequence.reserve(matches.size());
  for (const auto& m : matches) sequence.push_back(&m);
  return run_season(std::span<const MatchScorecard* const>(sequence), inputs, roster, structure, season_seed);
}

}  // namespace fantasy
