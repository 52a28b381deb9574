#pragma once

#include <span>

#include "fantasy/types.hpp"

namespace fantasy {

/// Objective values within this relative distance are treated as equal; the
/// lexicographically smaller id set then wins.
inline constexpr double kObjectiveTieTolerance = 1e-9;

/// Returns true when objective `a` is a strict improvement over `b`.
bool objective_better(double a, double b) noexcept;
bool objective_tied(double a, double b) noexcept;

/// Exact maximiser of sum(form_i - risk_aversion * variance_i) over every
/// constraint-satisfying team drawn from `pool`.
///
/// The objective is additive and the constraints only count players per
/// (role, side) cell, so the best team for a fixed cell-count vector takes the
/// top scorers of each cell. Enumerating the cell-count vectors (at most a few
/// tens of thousands for a 24-player pool) is therefore an exact search.
/// Ties are broken toward the lexicographically smallest sorted id set.
///
/// Throws InfeasibleError when the pool cannot satisfy the constraints and
/// ParameterError on mismatched inputs or negative risk aversion.
FantasyTeam mean_variance_select(std::span<const PlayerRecord> pool, std::span<const double> form,
                                 std::span<const double> variance, double risk_aversion,
                                 const ConstraintSet& constraints);

}  // namespace fantasy
