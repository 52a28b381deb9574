#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fantasy/types.hpp"

namespace fantasy {

/// Column order of the career file header.
inline constexpr std::array<std::string_view, 11> kCareerColumns = {
    "player_id", "innings_batted", "innings_bowled", "career_runs", "batting_average", "fours",
    "sixes",     "wickets",        "maidens",        "catches",     "stumpings"};

/// Key order of one scorecard record.
inline constexpr std::array<std::string_view, 19> kScorecardKeys = {
    "match_id", "match_index", "team_a",    "team_b",        "player_id", "team_id",   "role",
    "runs",     "balls_faced", "fours",     "sixes",         "did_bat",   "wickets",   "balls_bowled",
    "maidens",  "runs_conceded", "catches", "stumpings",     "runouts"};

struct ScorecardFile {
  /// Players in order of first appearance.
  std::vector<PlayerRecord> players;
  /// Sorted by match_index.
  std::vector<MatchScorecard> matches;
};

/// Reads newline-delimited scorecard records (one JSON object per line; blank
/// lines skipped). `balls_bowled` accepts an integer ball count or an overs
/// string such as "3.4". Malformed lines throw ParseError located as
/// "<source>:<line>"; inconsistent players or broken scorecard invariants throw
/// DatasetIntegrityError.
ScorecardFile parse_scorecards(std::istream& in, const std::string& source = "<stream>");
ScorecardFile parse_scorecards(const std::filesystem::path& path);

/// Reads the comma-separated career file. A blank batting_average, or any
/// average with zero innings batted, is recorded as 0.
std::vector<CareerStats> parse_career_stats(std::istream& in, const std::string& source = "<stream>");
std::vector<CareerStats> parse_career_stats(const std::filesystem::path& path);

struct CompletedCareers {
  /// One entry per player, in player order.
  std::vector<CareerStats> careers;
  std::vector<std::string> warnings;
};

/// Aligns careers with the player list: players without a row get an all-zero
/// career, rows for unknown players are dropped; both are reported as warnings.
/// Throws DatasetIntegrityError on duplicate career rows.
CompletedCareers complete_careers(std::span<const PlayerRecord> players, std::span<const CareerStats> careers);

struct LoadedDataset {
  TournamentDataset dataset;
  std::vector<std::string> warnings;
};

LoadedDataset load_dataset(const std::filesystem::path& scorecards, const std::filesystem::path& careers);

/// Inverse of parse_scorecards: one record per (match, roster entry) in match
/// then roster order, balls_bowled as an integer.
void write_scorecards(std::ostream& out, const TournamentDataset& dataset);
void write_careers(std::ostream& out, std::span<const CareerStats> careers);

/// Latent skill of a synthetic player.
struct PerformanceProfile {
  double mean_runs = 0;    // expected runs per innings
  double wicket_rate = 0;  // expected wickets per match when bowling

  bool operator==(const PerformanceProfile&) const = default;
};

struct FixtureConfig {
  int n_teams = 2;
  int players_per_team = 12;
  int n_matches = 6;
  /// Squad composition per team, indexed by role.
  std::array<int, kRoleCount> role_mix = {4, 4, 3, 1};
  /// Optional per-player profiles in squad order (team-major); empty draws
  /// them from role defaults.
  std::vector<PerformanceProfile> profiles;
  /// Players per team whose profile is multiplied by hot_multiplier during
  /// the season but not in their career record.
  int hot_players_per_team = 2;
  double hot_multiplier = 2.5;
  /// Chance that each side fields an impact player.
  double impact_probability = 0.5;
  std::uint64_t seed = 7;

  /// Throws ConfigError when the configuration cannot produce valid scorecards.
  void validate() const;
};

/// Deterministic synthetic tournament. Only players who appear in at least one
/// scorecard are listed, ordered by first appearance, with careers aligned.
TournamentDataset generate_fixture(const FixtureConfig& config);

}  // namespace fantasy
