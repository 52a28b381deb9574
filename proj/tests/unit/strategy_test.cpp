#include <gtest/gtest.h>

#include <set>

#include "builders.hpp"
#include "fantasy/contest.hpp"
#include "fantasy/errors.hpp"
#include "fantasy/ingestion.hpp"
#include "fantasy/strategy.hpp"
#include "fantasy/team.hpp"

namespace fantasy {
namespace {

/// One match of a fixture season with the history of the matches before it.
class StrategyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    FixtureConfig cfg;
    cfg.n_matches = 8;
    cfg.seed = 31;
    dataset_ = generate_fixture(cfg);
    inputs_ = SimulationInputs::from(dataset_);
    for (std::size_t k = 0; k + 1 < dataset_.matches.size(); ++k) history_.append(dataset_.matches[k], inputs_.players);
    const auto& m = dataset_.matches.back();
    info_ = MatchInfo{m.match_id, m.team_a, m.team_b};
    pool_ = build_selection_pool(m, inputs_.players);
  }

  MatchContext context(const PopularityTally& tally) const {
    return MatchContext{info_, pool_, history_, inputs_.careers, tally, inputs_.rules};
  }

  FantasyTeam pick(StrategyId s, std::uint64_t seed, const PopularityTally& tally = {}) const {
    Rng rng(seed);
    return select_team(s, context(tally), params_, rng);
  }

  int count_role(const FantasyTeam& t, PlayerRole role) const {
    int n = 0;
    for (const auto& p : pool_) n += (t.contains(p.player_id) && p.role == role) ? 1 : 0;
    return n;
  }

  int count_team(const FantasyTeam& t, const std::string& team) const {
    int n = 0;
    for (const auto& p : pool_) n += (t.contains(p.player_id) && p.team_id == team) ? 1 : 0;
    return n;
  }

  TournamentDataset dataset_;
  SimulationInputs inputs_;
  SeasonHistory history_;
  MatchInfo info_;
  std::vector<PlayerRecord> pool_;
  StrategyParams params_;
};

TEST(StrategyCatalogue, TraitsFollowTheTaxonomy) {
  const std::set<StrategyId> deterministic = {StrategyId::MA5,          StrategyId::CareerPoints,
                                              StrategyId::MA1,          StrategyId::AllrounderPref,
                                              StrategyId::MeanVarOptimization, StrategyId::TopsisSynthesis,
                                              StrategyId::TopsisAHP,    StrategyId::TopsisShannon};
  const std::set<StrategyId> learning = {StrategyId::MA5, StrategyId::TournamentStats, StrategyId::MA1,
                                         StrategyId::AllrounderPref, StrategyId::MeanVarOptimization};
  for (auto s : kAllStrategies) {
    EXPECT_EQ(traits(s).deterministic, deterministic.contains(s)) << strategy_name(s);
    EXPECT_EQ(traits(s).learning, learning.contains(s)) << strategy_name(s);
  }
}

TEST(StrategyCatalogue, NamesParseBack) {
  for (auto s : kAllStrategies) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_EQ(parse_strategy("Career_averages"), StrategyId::CareerAverages);
  EXPECT_EQ(parse_strategy("Random 1"), StrategyId::Random1);
  EXPECT_EQ(parse_strategy("TOPSIS_Shannon"), StrategyId::TopsisShannon);
  EXPECT_FALSE(parse_strategy("Oracle").has_value());
}

TEST(StrategyCatalogue, ConstraintOverrides) {
  const StrategyParams p;
  EXPECT_EQ(constraints_for(StrategyId::Random2, p).min_for(PlayerRole::Batter), 2);
  EXPECT_EQ(constraints_for(StrategyId::AllrounderPref, p).min_for(PlayerRole::Allrounder), 3);
  EXPECT_EQ(constraints_for(StrategyId::Random1, p), ConstraintSet{});
}

TEST(StrategyParams, ValidationErrors) {
  StrategyParams window;
  window.ma5_window = 0;
  EXPECT_THROW(window.validate(), ParameterError);
  StrategyParams risk;
  risk.risk_aversion = -1;
  EXPECT_THROW(risk.validate(), ParameterError);
  StrategyParams ahp;
  ahp.ahp_batting = Matrix(3, 3, 1.0);
  EXPECT_THROW(ahp.validate(), ParameterError);
  StrategyParams fav;
  fav.fav_team_majority = 12;
  EXPECT_THROW(fav.validate(), ParameterError);
  EXPECT_NO_THROW(StrategyParams{}.validate());
}

TEST(PopularityTally, CountsEntries) {
  const std::vector<FantasyTeam> teams = {FantasyTeam({"a", "b"}), FantasyTeam({"b", "c"})};
  const auto t = PopularityTally::from(teams);
  EXPECT_EQ(t.entries(), 2);
  EXPECT_EQ(t.count("b"), 2);
  EXPECT_EQ(t.count("a"), 1);
  EXPECT_EQ(t.count("z"), 0);
}

TEST_F(StrategyTest, EveryStrategyBuildsAValidTeam) {
  for (auto s : kAllStrategies) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto team = pick(s, seed);
      const auto verdict = validate_team(team, pool_, constraints_for(s, params_));
      EXPECT_TRUE(verdict.ok()) << strategy_name(s) << " seed " << seed;
    }
  }
}

TEST_F(StrategyTest, DeterministicStrategiesIgnoreTheStream) {
  for (auto s : kAllStrategies) {
    if (!traits(s).deterministic) continue;
    const auto first = pick(s, 1);
    for (std::uint64_t seed = 2; seed < 30; ++seed) EXPECT_EQ(pick(s, seed), first) << strategy_name(s);
  }
}

TEST_F(StrategyTest, VariableStrategiesVary) {
  for (auto s : kAllStrategies) {
    if (traits(s).deterministic) continue;
    std::set<FantasyTeam> seen;
    for (std::uint64_t seed = 0; seed < 20; ++seed) seen.insert(pick(s, seed));
    EXPECT_GE(seen.size(), 2u) << strategy_name(s);
  }
}

TEST_F(StrategyTest, Random2KeepsTwoBatters) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) EXPECT_GE(count_role(pick(StrategyId::Random2, seed), PlayerRole::Batter), 2);
}

TEST_F(StrategyTest, AllrounderPrefKeepsThreeAllrounders) {
  EXPECT_GE(count_role(pick(StrategyId::AllrounderPref, 0), PlayerRole::Allrounder), 3);
}

TEST_F(StrategyTest, AllrounderSelectAllTakesEveryAllrounder) {
  int available = 0;
  for (const auto& p : pool_) available += p.role == PlayerRole::Allrounder ? 1 : 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(count_role(pick(StrategyId::AllrounderSelectAll, seed), PlayerRole::Allrounder), available);
  }
}

TEST_F(StrategyTest, FavTeamSplitsTenToOne) {
  std::set<std::string> favourites;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto team = pick(StrategyId::FavTeam, seed);
    const int a = count_team(team, info_.team_a);
    const int b = count_team(team, info_.team_b);
    EXPECT_TRUE((a == 10 && b == 1) || (a == 1 && b == 10)) << a << "/" << b;
    favourites.insert(a == 10 ? info_.team_a : info_.team_b);
  }
  EXPECT_EQ(favourites.size(), 2u);
}

TEST_F(StrategyTest, MA5PicksTheFormLeaders) {
  const auto team = pick(StrategyId::MA5, 0);
  // The highest-form player of the pool is always selected.
  std::string leader;
  double best = -1e300;
  for (const auto& p : pool_) {
    const double f = compute_form(p.player_id, history_, 5);
    if (f > best || (f == best && p.player_id < leader)) {
      best = f;
      leader = p.player_id;
    }
  }
  EXPECT_TRUE(team.contains(leader));
}

TEST_F(StrategyTest, TournamentStatsLocksTheRunLeader) {
  std::string leader;
  int best = -1;
  for (const auto& p : pool_) {
    const int runs = history_.totals(p.player_id).runs;
    if (runs > best || (runs == best && p.player_id < leader)) {
      best = runs;
      leader = p.player_id;
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(pick(StrategyId::TournamentStats, seed).contains(leader));
}

TEST_F(StrategyTest, CareerAveragesLocksTheBestBatter) {
  std::string leader;
  double best = -1;
  for (const auto& p : pool_) {
    if (p.role != PlayerRole::Batter) continue;
    const double avg = inputs_.careers.at(p.player_id).batting_average;
    if (avg > best || (avg == best && p.player_id < leader)) {
      best = avg;
      leader = p.player_id;
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(pick(StrategyId::CareerAverages, seed).contains(leader));
}

TEST_F(StrategyTest, PopularityFollowsPriorEntries) {
  PopularityTally tally;
  const auto favourite = pick(StrategyId::MA5, 0);
  for (int i = 0; i < 5; ++i) tally.add(favourite);
  EXPECT_EQ(pick(StrategyId::PopularitySelection, 3, tally), favourite);
  // With no entries yet the choice is random but valid.
  const auto opening = pick(StrategyId::PopularitySelection, 3);
  EXPECT_TRUE(validate_team(opening, pool_, {}).ok());
}

TEST_F(StrategyTest, TopsisScoresLieInUnitInterval) {
  for (auto s : {StrategyId::TopsisSynthesis, StrategyId::TopsisAHP, StrategyId::TopsisShannon}) {
    const PopularityTally none;
    const auto scores = topsis_scores(s, context(none), params_);
    ASSERT_EQ(scores.size(), pool_.size());
    for (double v : scores) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  const PopularityTally none;
  EXPECT_THROW(topsis_scores(StrategyId::MA5, context(none), params_), ParameterError);
}

TEST_F(StrategyTest, InfeasiblePoolIsReported) {
  std::vector<PlayerRecord> no_keepers;
  for (const auto& p : pool_) {
    if (p.role != PlayerRole::Wicketkeeper) no_keepers.push_back(p);
  }
  const PopularityTally none;
  const MatchContext ctx{info_, no_keepers, history_, inputs_.careers, none, inputs_.rules};
  for (auto s : kAllStrategies) {
    Rng rng(1);
    EXPECT_THROW(select_team(s, ctx, params_, rng), InfeasibleError) << strategy_name(s);
  }
}

TEST(StrategySeason, EveryTeamOfAFixtureSeasonIsValid) {
  FixtureConfig cfg;
  cfg.n_matches = 20;
  cfg.seed = 77;
  const auto ds = generate_fixture(cfg);
  const auto inputs = SimulationInputs::from(ds);
  const auto roster = make_roster(kAllStrategies, 10);
  const auto season = run_season(std::span<const MatchScorecard>(ds.matches), inputs, roster,
                                 make_payoff_structure(ContestKind::FourX), 5);
  std::size_t checked = 0;
  for (std::size_t k = 0; k < season.size(); ++k) {
    const auto pool = build_selection_pool(ds.matches[k], inputs.players);
    for (const auto& a : season[k].agents) {
      EXPECT_TRUE(validate_team(a.team, pool, constraints_for(a.strategy, inputs.params)).ok());
      ++checked;
    }
  }
  EXPECT_EQ(checked, 20u * 150u);
}

}  // namespace
}  // namespace fantasy
