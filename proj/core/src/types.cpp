#include "fantasy/types.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "fantasy/errors.hpp"

namespace fantasy {

namespace {

std::string canonical_label(std::string_view label) {
  std::string out;
  for (char c : label) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) out.push_back(static_cast<char>(std::tolower(uc)));
  }
  return out;
}

struct RoleAlias {
  std::string_view label;
  PlayerRole role;
};

// Compared after lowercasing and dropping spaces, dashes and underscores.
constexpr RoleAlias kRoleAliases[] = {
    {"batter", PlayerRole::Batter},
    {"batsman", PlayerRole::Batter},
    {"batsmen", PlayerRole::Batter},
    {"bat", PlayerRole::Batter},
    {"bowler", PlayerRole::Bowler},
    {"bowl", PlayerRole::Bowler},
    {"allrounder", PlayerRole::Allrounder},
    {"battingallrounder", PlayerRole::Allrounder},
    {"bowlingallrounder", PlayerRole::Allrounder},
    {"ar", PlayerRole::Allrounder},
    {"wicketkeeper", PlayerRole::Wicketkeeper},
    {"wicketkeeperbatter", PlayerRole::Wicketkeeper},
    {"wicketkeeperbatsman", PlayerRole::Wicketkeeper},
    {"wkbatsman", PlayerRole::Wicketkeeper},
    {"wkbatter", PlayerRole::Wicketkeeper},
    {"keeper", PlayerRole::Wicketkeeper},
    {"wk", PlayerRole::Wicketkeeper},
};

}  // namespace

std::string_view to_string(PlayerRole role) noexcept {
  switch (role) {
    case PlayerRole::Batter: return "Batter";
    case PlayerRole::Bowler: return "Bowler";
    case PlayerRole::Allrounder: return "Allrounder";
    case PlayerRole::Wicketkeeper: return "Wicketkeeper";
  }
  return "?";
}

std::optional<PlayerRole> parse_role(std::string_view label) {
  const std::string key = canonical_label(label);
  for (const auto& alias : kRoleAliases) {
    if (alias.label == key) return alias.role;
  }
  return std::nullopt;
}

std::vector<std::string> stats_violations(const PlayerMatchStats& s) {
  std::vector<std::string> out;
  const auto check_nonneg = [&](int v, std::string_view field) {
    if (v < 0) out.push_back(fmt::format("{} is negative ({})", field, v));
  };
  check_nonneg(s.runs, "runs");
  check_nonneg(s.balls_faced, "balls_faced");
  check_nonneg(s.fours, "fours");
  check_nonneg(s.sixes, "sixes");
  check_nonneg(s.wickets, "wickets");
  check_nonneg(s.balls_bowled, "balls_bowled");
  check_nonneg(s.maidens, "maidens");
  check_nonneg(s.runs_conceded, "runs_conceded");
  check_nonneg(s.catches, "catches");
  check_nonneg(s.stumpings, "stumpings");
  check_nonneg(s.runouts, "runouts");
  if (4L * s.fours + 6L * s.sixes > s.runs) {
    out.push_back(fmt::format("boundary runs exceed runs (fours {} sixes {} runs {})", s.fours,
                              s.sixes, s.runs));
  }
  if (s.maidens > s.balls_bowled / 6) {
    out.push_back(fmt::format("maidens {} exceed completed overs {}", s.maidens, s.balls_bowled / 6));
  }
  return out;
}

int overs_to_balls(std::string_view overs) {
  const auto dot = overs.find('.');
  const auto digits_ok = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  const std::string_view whole = overs.substr(0, dot);
  if (!digits_ok(whole)) throw ParameterError(fmt::format("malformed overs value '{}'", overs));
  int balls = std::stoi(std::string(whole)) * 6;
  if (dot != std::string_view::npos) {
    const std::string_view frac = overs.substr(dot + 1);
    if (frac.size() != 1 || !digits_ok(frac) || frac[0] > '5') {
      throw ParameterError(fmt::format("malformed overs value '{}'", overs));
    }
    balls += frac[0] - '0';
  }
  return balls;
}

FantasyTeam::FantasyTeam(std::vector<std::string> players) : players_(std::move(players)) {
  std::sort(players_.begin(), players_.end());
}

bool FantasyTeam::contains(std::string_view player_id) const {
  return std::binary_search(players_.begin(), players_.end(), player_id);
}

void ConstraintSet::validate() const {
  int sum = 0;
  for (std::size_t r = 0; r < kRoleCount; ++r) {
    if (min_per_role[r] < 0) {
      throw ParameterError(fmt::format("min_per_role[{}] is negative", to_string(kAllRoles[r])));
    }
    sum += min_per_role[r];
  }
  if (min_per_real_team < 0) throw ParameterError("min_per_real_team is negative");
  if (team_size < 1) throw ParameterError("team_size must be positive");
  if (sum > team_size) {
    throw ParameterError(fmt::format("role minima sum {} exceeds team_size {}", sum, team_size));
  }
  if (2 * min_per_real_team > team_size) {
    throw ParameterError("min_per_real_team cannot be met by both teams");
  }
}

PlayerDirectory::PlayerDirectory(std::span<const PlayerRecord> players) {
  for (const auto& p : players) {
    if (!players_.emplace(p.player_id, p).second) {
      throw DatasetIntegrityError(fmt::format("duplicate player_id '{}'", p.player_id));
    }
  }
}

const PlayerRecord* PlayerDirectory::find(std::string_view player_id) const {
  const auto it = players_.find(player_id);
  return it == players_.end() ? nullptr : &it->second;
}

const PlayerRecord& PlayerDirectory::at(std::string_view player_id) const {
  if (const auto* p = find(player_id)) return *p;
  throw DatasetIntegrityError(fmt::format("unknown player_id '{}'", player_id));
}

CareerTable index_careers(std::span<const CareerStats> careers) {
  CareerTable table;
  for (const auto& c : careers) {
    if (!table.emplace(c.player_id, c).second) {
      throw DatasetIntegrityError(fmt::format("duplicate career row for player_id '{}'", c.player_id));
    }
  }
  return table;
}

void check_scorecard(const MatchScorecard& match, const PlayerDirectory& players) {
  if (match.team_a == match.team_b) {
    throw DatasetIntegrityError(fmt::format("match {}: team_a equals team_b", match.match_id));
  }
  std::set<std::string_view> seen;
  int side_a = 0;
  int side_b = 0;
  for (const auto& entry : match.roster) {
    const PlayerRecord* p = players.find(entry.player_id);
    if (p == nullptr) {
      throw DatasetIntegrityError(
          fmt::format("match {}: unknown player_id '{}'", match.match_id, entry.player_id));
    }
    if (!seen.insert(entry.player_id).second) {
      throw DatasetIntegrityError(
          fmt::format("match {}: duplicate player_id '{}'", match.match_id, entry.player_id));
    }
    if (p->team_id == match.team_a) {
      ++side_a;
    } else if (p->team_id == match.team_b) {
      ++side_b;
    } else {
      throw DatasetIntegrityError(fmt::format("match {}: player '{}' belongs to team '{}'",
                                              match.match_id, p->player_id, p->team_id));
    }
    const auto problems = stats_violations(entry.stats);
    if (!problems.empty()) {
      throw DatasetIntegrityError(fmt::format("match {}: player '{}': {}", match.match_id,
                                              entry.player_id, problems.front()));
    }
  }
  for (const auto& [team, count] : {std::pair{&match.team_a, side_a}, std::pair{&match.team_b, side_b}}) {
    if (count < 11 || count > 12) {
      throw DatasetIntegrityError(fmt::format("match {}: team '{}' has {} rostered players (want 11 or 12)",
                                              match.match_id, *team, count));
    }
  }
}

void check_dataset(const TournamentDataset& dataset) {
  const PlayerDirectory players(dataset.players);
  index_careers(dataset.careers);
  for (std::size_t i = 0; i < dataset.matches.size(); ++i) {
    const auto& m = dataset.matches[i];
    if (i > 0 && m.match_index <= dataset.matches[i - 1].match_index) {
      throw DatasetIntegrityError(fmt::format("match {}: match_index {} not strictly increasing",
                                              m.match_id, m.match_index));
    }
    check_scorecard(m, players);
  }
}

}  // namespace fantasy
