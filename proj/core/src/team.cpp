#include "fantasy/team.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "fantasy/errors.hpp"

namespace fantasy {

namespace {

std::string role_rule(PlayerRole r) { return fmt::format("min_per_role[{}]", to_string(r)); }

// Distinct team ids in order of first appearance.
std::vector<std::string> real_teams(std::span<const PlayerRecord> pool) {
  std::vector<std::string> teams;
  for (const auto& p : pool) {
    if (std::find(teams.begin(), teams.end(), p.team_id) == teams.end()) teams.push_back(p.team_id);
  }
  return teams;
}

}  // namespace

bool TeamVerdict::violates(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

TeamVerdict validate_team(const FantasyTeam& team, std::span<const PlayerRecord> pool,
                          const ConstraintSet& constraints) {
  TeamVerdict verdict;
  std::map<std::string_view, const PlayerRecord*> by_id;
  for (const auto& p : pool) by_id.emplace(p.player_id, &p);

  if (static_cast<int>(team.size()) != constraints.team_size) {
    verdict.violations.push_back(
        {"team_size", fmt::format("team has {} players, want {}", team.size(), constraints.team_size)});
  }
  const auto& ids = team.players();
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1]) verdict.violations.push_back({"duplicate_player", ids[i]});
  }

  std::array<int, kRoleCount> per_role{};
  std::map<std::string_view, int> per_team;
  for (const auto& id : ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      verdict.violations.push_back({"not_in_pool", id});
      continue;
    }
    ++per_role[role_index(it->second->role)];
    ++per_team[it->second->team_id];
  }
  for (PlayerRole r : kAllRoles) {
    if (per_role[role_index(r)] < constraints.min_for(r)) {
      verdict.violations.push_back(
          {role_rule(r), fmt::format("{} selected, want at least {}", per_role[role_index(r)],
                                     constraints.min_for(r))});
    }
  }
  for (const auto& t : real_teams(pool)) {
    const int n = per_team.count(t) ? per_team[t] : 0;
    if (n < constraints.min_per_real_team) {
      verdict.violations.push_back(
          {"min_per_real_team",
           fmt::format("team '{}' has {} selected, want at least {}", t, n, constraints.min_per_real_team)});
    }
  }
  return verdict;
}

std::vector<PlayerRecord> build_selection_pool(const MatchScorecard& match,
                                               const PlayerDirectory& players) {
  std::vector<PlayerRecord> pool;
  pool.reserve(match.roster.size());
  std::set<std::string_view> seen;
  for (const auto& entry : match.roster) {
    const PlayerRecord* p = players.find(entry.player_id);
    if (p == nullptr) {
      throw DatasetIntegrityError(
          fmt::format("match {}: roster references unknown player_id '{}'", match.match_id, entry.player_id));
    }
    if (!seen.insert(entry.player_id).second) {
      throw DatasetIntegrityError(
          fmt::format("match {}: duplicate roster entry '{}'", match.match_id, entry.player_id));
    }
    if (p->team_id != match.team_a && p->team_id != match.team_b) {
      throw DatasetIntegrityError(fmt::format("match {}: player '{}' is not on either side",
                                              match.match_id, entry.player_id));
    }
    pool.push_back(*p);
  }
  return pool;
}

int CellCounts::side_total(int side) const noexcept {
  int n = 0;
  for (PlayerRole r : kAllRoles) n += at(r, side);
  return n;
}

int CellCounts::total() const noexcept {
  int n = 0;
  for (int c : cells) n += c;
  return n;
}

int min_players_to_satisfy(const CellCounts& chosen, const CellCounts& available,
                           const ConstraintSet& constraints) {
  // Role deficits are covered first; x of those picks land on side 0 and the
  // feasible range of x follows from per-cell availability. Side deficits
  // left over are covered by extra picks of any role from that side.
  int lo = 0;
  int hi = 0;
  int role_deficit = 0;
  for (PlayerRole r : kAllRoles) {
    const int d = std::max(0, constraints.min_for(r) - chosen.role_total(r));
    const int r_lo = std::max(0, d - available.at(r, 1));
    const int r_hi = std::min(d, available.at(r, 0));
    if (r_lo > r_hi) return -1;
    lo += r_lo;
    hi += r_hi;
    role_deficit += d;
  }
  int side_deficit[2];
  for (int s = 0; s < 2; ++s) {
    // A side with no players at all in the pool is not a real team here.
    const bool present = chosen.side_total(s) + available.side_total(s) > 0;
    side_deficit[s] = present ? std::max(0, constraints.min_per_real_team - chosen.side_total(s)) : 0;
    if (side_deficit[s] > available.side_total(s)) return -1;
  }
  int best = -1;
  for (int x = lo; x <= hi; ++x) {
    const int need = role_deficit + std::max(0, side_deficit[0] - x) +
                     std::max(0, side_deficit[1] - (role_deficit - x));
    if (best < 0 || need < best) best = need;
  }
  return best;
}

bool can_complete(const CellCounts& chosen, const CellCounts& available,
                  const ConstraintSet& constraints) {
  const int slots = constraints.team_size - chosen.total();
  if (slots < 0 || available.total() < slots) return false;
  const int need = min_players_to_satisfy(chosen, available, constraints);
  return need >= 0 && need <= slots;
}

std::vector<Violation> pool_infeasibility(std::span<const PlayerRecord> pool,
                                          const ConstraintSet& constraints) {
  std::vector<Violation> out;
  const auto teams = real_teams(pool);
  std::array<int, kRoleCount> per_role{};
  for (const auto& p : pool) ++per_role[role_index(p.role)];
  for (PlayerRole r : kAllRoles) {
    if (per_role[role_index(r)] < constraints.min_for(r)) {
      out.push_back({role_rule(r), fmt::format("pool has {} of role {}, want at least {}",
                                               per_role[role_index(r)], to_string(r), constraints.min_for(r))});
    }
  }
  for (const auto& t : teams) {
    const auto n = std::count_if(pool.begin(), pool.end(), [&](const PlayerRecord& p) { return p.team_id == t; });
    if (n < constraints.min_per_real_team) {
      out.push_back({"min_per_real_team", fmt::format("pool has {} players from '{}'", n, t)});
    }
  }
  if (static_cast<int>(pool.size()) < constraints.team_size) {
    out.push_back({"team_size", fmt::format("pool has {} players, want {}", pool.size(), constraints.team_size)});
  }
  if (out.empty() && teams.size() <= 2) {
    CellCounts available;
    for (const auto& p : pool) available.add(p.role, p.team_id == teams.front() ? 0 : 1);
    if (!can_complete(CellCounts{}, available, constraints)) {
      out.push_back({"combined_minima", "role and team minima cannot be met together"});
    }
  }
  if (teams.size() > 2) {
    out.push_back({"real_teams", fmt::format("pool spans {} teams, want at most 2", teams.size())});
  }
  return out;
}

}  // namespace fantasy
