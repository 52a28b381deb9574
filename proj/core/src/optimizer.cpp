#include "fantasy/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "fantasy/team.hpp"

namespace fantasy {

bool objective_tied(double a, double b) noexcept {
  return std::abs(a - b) <= kObjectiveTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

bool objective_better(double a, double b) noexcept { return a > b && !objective_tied(a, b); }

namespace {

constexpr std::size_t kCells = kRoleCount * 2;

struct Search {
  const ConstraintSet& constraints;
  std::array<std::vector<std::size_t>, kCells> members;  // pool indices, best first
  std::array<std::vector<double>, kCells> prefix;        // prefix[c][k] = sum of top k
  std::span<const PlayerRecord> pool;

  std::array<int, kCells> take{};
  bool found = false;
  double best_value = 0;
  std::vector<std::string> best_ids;

  std::vector<std::string> ids_for(const std::array<int, kCells>& counts) const {
    std::vector<std::string> ids;
    for (std::size_t c = 0; c < kCells; ++c) {
      for (int k = 0; k < counts[c]; ++k) ids.push_back(pool[members[c][static_cast<std::size_t>(k)]].player_id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  bool meets_minima() const {
    CellCounts counts;
    counts.cells = take;
    for (PlayerRole r : kAllRoles) {
      if (counts.role_total(r) < constraints.min_for(r)) return false;
    }
    for (int s = 0; s < 2; ++s) {
      const bool present = !members[CellCounts::cell(PlayerRole::Batter, s)].empty() ||
                           !members[CellCounts::cell(PlayerRole::Bowler, s)].empty() ||
                           !members[CellCounts::cell(PlayerRole::Allrounder, s)].empty() ||
                           !members[CellCounts::cell(PlayerRole::Wicketkeeper, s)].empty();
      if (present && counts.side_total(s) < constraints.min_per_real_team) return false;
    }
    return true;
  }

  void visit(std::size_t cell, int remaining) {
    if (cell == kCells) {
      if (remaining != 0 || !meets_minima()) return;
      double value = 0;
      for (std::size_t c = 0; c < kCells; ++c) value += prefix[c][static_cast<std::size_t>(take[c])];
      if (!found || objective_better(value, best_value)) {
        found = true;
        best_value = value;
        best_ids = ids_for(take);
      } else if (objective_tied(value, best_value)) {
        auto ids = ids_for(take);
        if (ids < best_ids) {
          best_ids = std::move(ids);
          best_value = std::max(best_value, value);
        }
      }
      return;
    }
    int capacity_after = 0;
    for (std::size_t c = cell + 1; c < kCells; ++c) capacity_after += static_cast<int>(members[c].size());
    const int hi = std::min(remaining, static_cast<int>(members[cell].size()));
    const int lo = std::max(0, remaining - capacity_after);
    for (int k = hi; k >= lo; --k) {
      take[cell] = k;
      visit(cell + 1, remaining - k);
    }
    take[cell] = 0;
  }
};

}  // namespace

FantasyTeam mean_variance_select(std::span<const PlayerRecord> pool, std::span<const double> form,
                                 std::span<const double> variance, double risk_aversion,
                                 const ConstraintSet& constraints) {
  if (form.size() != pool.size() || variance.size() != pool.size()) {
    throw ParameterError("mean_variance_select: form/variance must have one entry per pool player");
  }
  if (!(risk_aversion >= 0)) throw ParameterError("mean_variance_select: risk aversion must be >= 0");
  constraints.validate();
  if (const auto problems = pool_infeasibility(pool, constraints); !problems.empty()) {
    std::string detail;
    for (const auto& v : problems) detail += fmt::format(" [{}: {}]", v.rule, v.detail);
    throw InfeasibleError("mean_variance_select: infeasible pool" + detail);
  }

  std::vector<double> objective(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) objective[i] = form[i] - risk_aversion * variance[i];

  Search search{constraints, {}, {}, pool, {}, false, 0, {}};
  const std::string& first_team = pool.front().team_id;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const int side = pool[i].team_id == first_team ? 0 : 1;
    search.members[CellCounts::cell(pool[i].role, side)].push_back(i);
  }
  for (std::size_t c = 0; c < kCells; ++c) {
    auto& m = search.members[c];
    std::sort(m.begin(), m.end(), [&](std::size_t a, std::size_t b) {
      if (objective[a] != objective[b]) return objective[a] > objective[b];
      return pool[a].player_id < pool[b].player_id;
    });
    search.prefix[c].assign(m.size() + 1, 0.0);
    for (std::size_t k = 0; k < m.size(); ++k) search.prefix[c][k + 1] = search.prefix[c][k] + objective[m[k]];
  }
  search.visit(0, constraints.team_size);
  if (!search.found) throw InfeasibleError("mean_variance_select: no feasible team");
  return FantasyTeam(std::move(search.best_ids));
}

}  // namespace fantasy
