#include "fantasy/history.hpp"

#include <algorithm>

#include "fantasy/errors.hpp"

namespace fantasy {

void SeasonHistory::append(const MatchScorecard& match, const PlayerDirectory& players) {
  for (const auto& entry : match.roster) {
    const auto& player = players.at(entry.player_id);
    auto& log = log_[entry.player_id];
    const auto& s = entry.stats;
    log.points.push_back(score_player_match(s, player.role, rules_));
    auto& t = log.totals;
    ++t.appearances;
    if (s.did_bat) ++t.innings_batted;
    t.runs += s.runs;
    t.balls_faced += s.balls_faced;
    t.fours += s.fours;
    t.sixes += s.sixes;
    t.wickets += s.wickets;
    t.balls_bowled += s.balls_bowled;
    t.runs_conceded += s.runs_conceded;
    t.maidens += s.maidens;
    t.catches += s.catches;
    t.stumpings += s.stumpings;
    t.runouts += s.runouts;
  }
  ++matches_;
}

std::span<const double> SeasonHistory::appearances(std::string_view player_id) const {
  const auto it = log_.find(player_id);
  if (it == log_.end()) return {};
  return it->second.points;
}

const TournamentTotals& SeasonHistory::totals(std::string_view player_id) const {
  static const TournamentTotals kNone{};
  const auto it = log_.find(player_id);
  return it == log_.end() ? kNone : it->second.totals;
}

namespace {

std::span<const double> last_window(std::span<const double> points, int window) {
  if (window < 1) throw ParameterError("form window must be at least 1");
  const auto n = std::min<std::size_t>(points.size(), static_cast<std::size_t>(window));
  return points.last(n);
}

}  // namespace

double compute_form(std::string_view player_id, const SeasonHistory& history, int window,
                    double fallback) {
  const auto recent = last_window(history.appearances(player_id), window);
  if (recent.empty()) return fallback;
  double sum = 0;
  for (double p : recent) sum += p;
  return sum / static_cast<double>(recent.size());
}

double form_variance(std::string_view player_id, const SeasonHistory& history, int window) {
  const auto recent = last_window(history.appearances(player_id), window);
  if (recent.size() < 2) return 0.0;
  double mean = 0;
  for (double p : recent) mean += p;
  mean /= static_cast<double>(recent.size());
  double ss = 0;
  for (double p : recent) ss += (p - mean) * (p - mean);
  return ss / static_cast<double>(recent.size());
}

double career_point_rate(const CareerStats& c, const ScoringRules& rules) {
  const double batting =
      c.career_runs * rules.run + c.career_fours * rules.four_bonus + c.career_sixes * rules.six_bonus;
  const double bowling = c.career_wickets * rules.wicket + c.career_maidens * rules.maiden;
  const double fielding = c.career_catches * rules.catch_taken + c.career_stumpings * rules.stumping;
  const int fielded = std::max({c.innings_batted, c.innings_bowled, 1});
  return batting / std::max(c.innings_batted, 1) + bowling / std::max(c.innings_bowled, 1) +
         fielding / fielded;
}

}  // namespace fantasy
