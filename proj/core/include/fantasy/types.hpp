#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fantasy {

enum class PlayerRole : std::uint8_t { Batter = 0, Bowler = 1, Allrounder = 2, Wicketkeeper = 3 };

inline constexpr std::size_t kRoleCount = 4;
inline constexpr std::array<PlayerRole, kRoleCount> kAllRoles = {
    PlayerRole::Batter, PlayerRole::Bowler, PlayerRole::Allrounder, PlayerRole::Wicketkeeper};

constexpr std::size_t role_index(PlayerRole r) noexcept { return static_cast<std::size_t>(r); }

std::string_view to_string(PlayerRole role) noexcept;

/// Maps a source role label onto the four canonical roles. Labels are trimmed
/// and matched case-insensitively against a fixed table ("WK-Batsman",
/// "Batting Allrounder", "Bowler", ...). Returns nullopt for unknown labels.
std::optional<PlayerRole> parse_role(std::string_view label);

struct PlayerRecord {
  std::string player_id;
  std::string name;
  PlayerRole role = PlayerRole::Batter;
  std::string team_id;

  bool operator==(const PlayerRecord&) const = default;
};

/// One player's line in one match. Overs are held as balls.
struct PlayerMatchStats {
  int runs = 0;
  int balls_faced = 0;
  int fours = 0;
  int sixes = 0;
  bool did_bat = false;
  int wickets = 0;
  int balls_bowled = 0;
  int maidens = 0;
  int runs_conceded = 0;
  int catches = 0;
  int stumpings = 0;
  int runouts = 0;

  bool operator==(const PlayerMatchStats&) const = default;
};

/// Empty when the stats are internally consistent; otherwise one message per
/// broken rule (negative count, boundaries exceeding runs, too many maidens).
std::vector<std::string> stats_violations(const PlayerMatchStats& stats);

/// "3.4" -> 22 balls. Throws ParameterError when the ball digit exceeds 5.
int overs_to_balls(std::string_view overs);

struct RosterEntry {
  std::string player_id;
  PlayerMatchStats stats;

  bool operator==(const RosterEntry&) const = default;
};

struct MatchScorecard {
  std::string match_id;
  int match_index = 0;
  std::string team_a;
  std::string team_b;
  std::vector<RosterEntry> roster;

  bool operator==(const MatchScorecard&) const = default;
};

struct CareerStats {
  std::string player_id;
  int innings_batted = 0;
  int innings_bowled = 0;
  int career_runs = 0;
  double batting_average = 0.0;
  int career_fours = 0;
  int career_sixes = 0;
  int career_wickets = 0;
  int career_maidens = 0;
  int career_catches = 0;
  int career_stumpings = 0;

  bool operator==(const CareerStats&) const = default;
};

/// Eleven (team_size) distinct player ids, kept sorted so that equal
/// selections compare equal regardless of pick order.
class FantasyTeam {
 public:
  FantasyTeam() = default;
  explicit FantasyTeam(std::vector<std::string> players);

  const std::vector<std::string>& players() const noexcept { return players_; }
  std::size_t size() const noexcept { return players_.size(); }
  bool contains(std::string_view player_id) const;

  bool operator==(const FantasyTeam&) const = default;
  auto operator<=>(const FantasyTeam&) const = default;

 private:
  std::vector<std::string> players_;
};

struct ConstraintSet {
  std::array<int, kRoleCount> min_per_role = {1, 1, 1, 1};
  int min_per_real_team = 1;
  int team_size = 11;

  int min_for(PlayerRole r) const noexcept { return min_per_role[role_index(r)]; }
  /// Throws ParameterError when a minimum is negative or the minima exceed team_size.
  void validate() const;

  bool operator==(const ConstraintSet&) const = default;
};

struct TournamentDataset {
  std::vector<PlayerRecord> players;
  std::vector<CareerStats> careers;
  std::vector<MatchScorecard> matches;

  bool operator==(const TournamentDataset&) const = default;
};

/// Id-keyed lookup over a player list.
class PlayerDirectory {
 public:
  PlayerDirectory() = default;
  /// Throws DatasetIntegrityError on duplicate ids.
  explicit PlayerDirectory(std::span<const PlayerRecord> players);

  const PlayerRecord* find(std::string_view player_id) const;
  /// Throws DatasetIntegrityError when the id is unknown.
  const PlayerRecord& at(std::string_view player_id) const;
  std::size_t size() const noexcept { return players_.size(); }

 private:
  std::map<std::string, PlayerRecord, std::less<>> players_;
};

using CareerTable = std::map<std::string, CareerStats, std::less<>>;

/// Indexes careers by player id. Throws DatasetIntegrityError on duplicates.
CareerTable index_careers(std::span<const CareerStats> careers);

/// Checks the scorecard invariants against the directory: known players, no
/// duplicates, both sides present with 11 or 12 players each, valid stats.
/// Throws DatasetIntegrityError naming the first breach.
void check_scorecard(const MatchScorecard& match, const PlayerDirectory& players);

/// Full dataset check: unique player ids, every scorecard valid, match_index
/// strictly increasing.
void check_dataset(const TournamentDataset& dataset);

}  // namespace fantasy
