#pragma once

#include <string>
#include <unordered_map>

#include "fantasy/types.hpp"

namespace fantasy {

/// Fantasy point table. The defaults approximate a common T20 table; every
/// value can be overridden from the experiment config.
struct ScoringRules {
  double run = 1;
  double four_bonus = 1;
  double six_bonus = 2;
  double fifty_bonus = 8;     // 50..99 runs
  double hundred_bonus = 16;  // 100+ runs, replaces the fifty bonus
  double duck_penalty = -2;   // non-bowlers who bat and make 0
  double wicket = 25;
  double maiden = 12;
  double three_wicket_bonus = 4;
  double catch_taken = 8;
  double stumping = 12;
  double runout = 12;  // whole value to the single credited fielder

  /// Throws ParameterError on a non-finite value.
  void validate() const;
  bool operator==(const ScoringRules&) const = default;
};

double batting_points(const PlayerMatchStats& stats, PlayerRole role, const ScoringRules& rules);
double bowling_points(const PlayerMatchStats& stats, const ScoringRules& rules);
double fielding_points(const PlayerMatchStats& stats, const ScoringRules& rules);

/// Batting + bowling + fielding points for one player in one match.
double score_player_match(const PlayerMatchStats& stats, PlayerRole role, const ScoringRules& rules);

using PointTable = std::unordered_map<std::string, double>;

/// One entry per rostered player.
PointTable build_match_point_table(const MatchScorecard& match, const PlayerDirectory& players,
                                   const ScoringRules& rules);

/// Sum of members' points. Throws DatasetIntegrityError if a member is missing.
double score_team(const FantasyTeam& team, const PointTable& points);

}  // namespace fantasy
