#include "fantasy/scoring.hpp"

#include <cmath>

#include <fmt/format.h>

#include "fantasy/errors.hpp"

namespace fantasy {

void ScoringRules::validate() const {
  for (double v : {run, four_bonus, six_bonus, fifty_bonus, hundred_bonus, duck_penalty, wicket, maiden,
                   three_wicket_bonus, catch_taken, stumping, runout}) {
    if (!std::isfinite(v)) throw ParameterError("scoring rules contain a non-finite value");
  }
}

double batting_points(const PlayerMatchStats& s, PlayerRole role, const ScoringRules& rules) {
  double pts = s.runs * rules.run + s.fours * rules.four_bonus + s.sixes * rules.six_bonus;
  if (s.runs >= 100) {
    pts += rules.hundred_bonus;
  } else if (s.runs >= 50) {
    pts += rules.fifty_bonus;
  }
  if (s.did_bat && s.runs == 0 && role != PlayerRole::Bowler) pts += rules.duck_penalty;
  return pts;
}

double bowling_points(const PlayerMatchStats& s, const ScoringRules& rules) {
  double pts = s.wickets * rules.wicket + s.maidens * rules.maiden;
  if (s.wickets >= 3) pts += rules.three_wicket_bonus;
  return pts;
}

double fielding_points(const PlayerMatchStats& s, const ScoringRules& rules) {
  return s.catches * rules.catch_taken + s.stumpings * rules.stumping + s.runouts * rules.runout;
}

double score_player_match(const PlayerMatchStats& stats, PlayerRole role, const ScoringRules& rules) {
  return batting_points(stats, role, rules) + bowling_points(stats, rules) + fielding_points(stats, rules);
}

PointTable build_match_point_table(const MatchScorecard& match, const PlayerDirectory& players,
                                   const ScoringRules& rules) {
  PointTable table;
  table.reserve(match.roster.size());
  for (const auto& entry : match.roster) {
    const auto& player = players.at(entry.player_id);
    table.emplace(entry.player_id, score_player_match(entry.stats, player.role, rules));
  }
  return table;
}

double score_team(const FantasyTeam& team, const PointTable& points) {
  double total = 0;
  for (const auto& id : team.players()) {
    const auto it = points.find(id);
    if (it == points.end()) {
      throw DatasetIntegrityError(fmt::format("team member '{}' has no points entry", id));
    }
    total += it->second;
  }
  return total;
}

}  // namespace fantasy
