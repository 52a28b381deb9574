#include <gtest/gtest.h>

#include "builders.hpp"
#include "fantasy/errors.hpp"
#include "fantasy/types.hpp"

namespace fantasy {
namespace {

using testing::blank_match;
using testing::two_sides;

TEST(ParseRole, MapsSourceLabels) {
  EXPECT_EQ(parse_role("Batter"), PlayerRole::Batter);
  EXPECT_EQ(parse_role("Batter "), PlayerRole::Batter);
  EXPECT_EQ(parse_role("  batsman"), PlayerRole::Batter);
  EXPECT_EQ(parse_role("Bowler"), PlayerRole::Bowler);
  EXPECT_EQ(parse_role("Batting Allrounder"), PlayerRole::Allrounder);
  EXPECT_EQ(parse_role("Bowling Allrounder"), PlayerRole::Allrounder);
  EXPECT_EQ(parse_role("WK-Batsman"), PlayerRole::Wicketkeeper);
  EXPECT_EQ(parse_role("Wicketkeeper"), PlayerRole::Wicketkeeper);
}

TEST(ParseRole, RejectsUnknownLabels) {
  EXPECT_FALSE(parse_role("captain").has_value());
  EXPECT_FALSE(parse_role("").has_value());
}

TEST(ParseRole, RoundTripsCanonicalNames) {
  for (auto r : kAllRoles) EXPECT_EQ(parse_role(to_string(r)), r);
}

TEST(OversToBalls, ConvertsDecimalOvers) {
  EXPECT_EQ(overs_to_balls("3.4"), 22);
  EXPECT_EQ(overs_to_balls("4"), 24);
  EXPECT_EQ(overs_to_balls("0.5"), 5);
  EXPECT_EQ(overs_to_balls("4.0"), 24);
}

TEST(OversToBalls, RejectsMalformedValues) {
  EXPECT_THROW(overs_to_balls("3.6"), ParameterError);
  EXPECT_THROW(overs_to_balls("three"), ParameterError);
  EXPECT_THROW(overs_to_balls("-1"), ParameterError);
  EXPECT_THROW(overs_to_balls("3.45"), ParameterError);
}

TEST(StatsViolations, AcceptsConsistentLine) {
  PlayerMatchStats s;
  s.runs = 30;
  s.fours = 3;
  s.sixes = 3;
  s.balls_bowled = 24;
  s.maidens = 4;
  EXPECT_TRUE(stats_violations(s).empty());
}

TEST(StatsViolations, FlagsBoundariesAboveRuns) {
  PlayerMatchStats s;
  s.runs = 9;
  s.fours = 1;
  s.sixes = 1;
  EXPECT_FALSE(stats_violations(s).empty());
  s.runs = 10;
  EXPECT_TRUE(stats_violations(s).empty());
}

TEST(StatsViolations, FlagsNegativeCountsAndExcessMaidens) {
  PlayerMatchStats neg;
  neg.catches = -1;
  EXPECT_FALSE(stats_violations(neg).empty());
  PlayerMatchStats maidens;
  maidens.balls_bowled = 11;
  maidens.maidens = 2;
  EXPECT_FALSE(stats_violations(maidens).empty());
}

TEST(FantasyTeam, IsOrderInsensitive) {
  FantasyTeam a({"c", "a", "b"});
  FantasyTeam b({"b", "c", "a"});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains("b"));
  EXPECT_FALSE(a.contains("d"));
}

TEST(ConstraintSet, DefaultsAreValid) {
  ConstraintSet c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.team_size, 11);
  for (auto r : kAllRoles) EXPECT_EQ(c.min_for(r), 1);
}

TEST(ConstraintSet, RejectsMinimaAboveTeamSize) {
  ConstraintSet c;
  c.min_per_role = {5, 5, 1, 1};
  EXPECT_THROW(c.validate(), ParameterError);
  ConstraintSet neg;
  neg.min_per_role[0] = -1;
  EXPECT_THROW(neg.validate(), ParameterError);
  ConstraintSet sides;
  sides.min_per_real_team = 6;
  EXPECT_THROW(sides.validate(), ParameterError);
}

TEST(PlayerDirectory, RejectsDuplicatesAndUnknownIds) {
  const std::vector<PlayerRecord> dup = {testing::player("x", PlayerRole::Batter, "A"),
                                         testing::player("x", PlayerRole::Bowler, "A")};
  EXPECT_THROW(PlayerDirectory{dup}, DatasetIntegrityError);
  const PlayerDirectory dir(std::vector<PlayerRecord>{testing::player("y", PlayerRole::Batter, "A")});
  EXPECT_EQ(dir.at("y").role, PlayerRole::Batter);
  EXPECT_EQ(dir.find("z"), nullptr);
  EXPECT_THROW(dir.at("z"), DatasetIntegrityError);
}

TEST(IndexCareers, RejectsDuplicateRows) {
  std::vector<CareerStats> rows(2);
  rows[0].player_id = rows[1].player_id = "p";
  EXPECT_THROW(index_careers(rows), DatasetIntegrityError);
}

TEST(CheckScorecard, AcceptsElevenAndTwelvePerSide) {
  const auto players = two_sides({4, 4, 3, 1}, {4, 4, 3, 1});
  const PlayerDirectory dir(players);
  EXPECT_NO_THROW(check_scorecard(blank_match(players), dir));
  auto eleven = players;
  eleven.erase(eleven.begin());
  eleven.erase(eleven.begin() + 12);
  EXPECT_NO_THROW(check_scorecard(blank_match(eleven), dir));
}

TEST(CheckScorecard, RejectsShortSideUnknownPlayerAndDuplicates) {
  const auto players = two_sides({4, 4, 3, 1}, {4, 4, 3, 1});
  const PlayerDirectory dir(players);

  auto short_side = players;
  short_side.erase(short_side.begin(), short_side.begin() + 2);
  EXPECT_THROW(check_scorecard(blank_match(short_side), dir), DatasetIntegrityError);

  auto unknown = blank_match(players);
  unknown.roster.back().player_id = "P999";
  EXPECT_THROW(check_scorecard(unknown, dir), DatasetIntegrityError);

  auto dup = blank_match(players);
  dup.roster[1].player_id = dup.roster[0].player_id;
  EXPECT_THROW(check_scorecard(dup, dir), DatasetIntegrityError);

  auto bad_stats = blank_match(players);
  bad_stats.roster[0].stats.fours = 3;
  EXPECT_THROW(check_scorecard(bad_stats, dir), DatasetIntegrityError);
}

TEST(CheckDataset, RequiresIncreasingMatchIndex) {
  const auto players = two_sides({3, 3, 3, 2}, {3, 3, 3, 2});
  TournamentDataset ds;
  ds.players = players;
  ds.matches = {blank_match(players, "M1", 2), blank_match(players, "M2", 2)};
  EXPECT_THROW(check_dataset(ds), DatasetIntegrityError);
  ds.matches[1].match_index = 3;
  EXPECT_NO_THROW(check_dataset(ds));
}

}  // namespace
}  // namespace fantasy
