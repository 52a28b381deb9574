#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "fantasy/types.hpp"

namespace fantasy {

struct Violation {
  /// Rule identifier: "team_size", "duplicate_player", "not_in_pool",
  /// "min_per_role[<Role>]" or "min_per_real_team".
  std::string rule;
  std::string detail;
};

struct TeamVerdict {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool violates(std::string_view rule) const;
};

/// Checks a team against a selection pool. The real teams are the distinct
/// team_ids present in the pool.
TeamVerdict validate_team(const FantasyTeam& team, std::span<const PlayerRecord> pool,
                          const ConstraintSet& constraints);

/// The rostered players of both sides joined with their records, in roster
/// order. Throws DatasetIntegrityError on an unknown id.
std::vector<PlayerRecord> build_selection_pool(const MatchScorecard& match,
                                               const PlayerDirectory& players);

/// Player counts split by (role, side); side 0 and 1 are the two real teams.
struct CellCounts {
  std::array<int, kRoleCount * 2> cells{};

  static constexpr std::size_t cell(PlayerRole role, int side) noexcept {
    return role_index(role) * 2 + static_cast<std::size_t>(side);
  }
  void add(PlayerRole role, int side, int n = 1) noexcept { cells[cell(role, side)] += n; }
  int at(PlayerRole role, int side) const noexcept { return cells[cell(role, side)]; }
  int role_total(PlayerRole role) const noexcept { return at(role, 0) + at(role, 1); }
  int side_total(int side) const noexcept;
  int total() const noexcept;
};

/// Fewest further players, drawn from `available`, that bring `chosen` up to
/// every role and side minimum; -1 when no draw can. Only the role/side
/// minima are considered, not team_size.
int min_players_to_satisfy(const CellCounts& chosen, const CellCounts& available,
                           const ConstraintSet& constraints);

/// True when `chosen` can be extended to a full valid team using players from
/// `available` (which must not overlap `chosen`).
bool can_complete(const CellCounts& chosen, const CellCounts& available,
                  const ConstraintSet& constraints);

/// Minima of `constraints` the pool cannot satisfy at all (empty if feasible).
std::vector<Violation> pool_infeasibility(std::span<const PlayerRecord> pool,
                                          const ConstraintSet& constraints);

}  // namespace fantasy
