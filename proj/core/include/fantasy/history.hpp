#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fantasy/scoring.hpp"
#include "fantasy/types.hpp"

namespace fantasy {

/// Cumulative per-player statistics over the matches seen so far.
struct TournamentTotals {
  int appearances = 0;
  int innings_batted = 0;
  int runs = 0;
  int balls_faced = 0;
  int fours = 0;
  int sixes = 0;
  int wickets = 0;
  int balls_bowled = 0;
  int runs_conceded = 0;
  int maidens = 0;
  int catches = 0;
  int stumpings = 0;
  int runouts = 0;

  int boundaries() const noexcept { return fours + sixes; }
};

/// The scored past of the current season, in sequence order. Within a
/// bootstrap season "past" means earlier positions of the resampled sequence,
/// so the same match may appear more than once.
class SeasonHistory {
 public:
  explicit SeasonHistory(ScoringRules rules = {}) : rules_(rules) {}

  void append(const MatchScorecard& match, const PlayerDirectory& players);

  /// Fantasy points per appearance, oldest first.
  std::span<const double> appearances(std::string_view player_id) const;
  const TournamentTotals& totals(std::string_view player_id) const;
  std::size_t match_count() const noexcept { return matches_; }
  const ScoringRules& rules() const noexcept { return rules_; }

 private:
  struct PlayerLog {
    std::vector<double> points;
    TournamentTotals totals;
  };

  ScoringRules rules_;
  std::size_t matches_ = 0;
  std::map<std::string, PlayerLog, std::less<>> log_;
};

/// Mean points over the last min(window, appearances) appearances; `fallback`
/// when the player has not appeared.
double compute_form(std::string_view player_id, const SeasonHistory& history, int window,
                    double fallback = 0.0);

/// Population variance over the last min(window, appearances) appearances;
/// 0 with fewer than two appearances.
double form_variance(std::string_view player_id, const SeasonHistory& history, int window);

/// Per-innings fantasy points from career totals: batting events over innings
/// batted, bowling events over innings bowled, fielding events over the larger
/// of the two (each denominator at least 1).
double career_point_rate(const CareerStats& career, const ScoringRules& rules);

}  // namespace fantasy
