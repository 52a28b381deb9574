#include "fantasy/strategy.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "fantasy/optimizer.hpp"
#include "fantasy/team.hpp"

namespace fantasy {

namespace {

struct StrategyInfo {
  StrategyId id;
  std::string_view name;
  StrategyTraits traits;
};

constexpr StrategyInfo kStrategies[kStrategyCount] = {
    {StrategyId::Random1, "Random1", {false, false}},
    {StrategyId::FavTeam, "FavTeam", {false, false}},
    {StrategyId::AllrounderSelectAll, "AllrounderSelectAll", {false, false}},
    {StrategyId::MA5, "MA5", {true, true}},
    {StrategyId::CareerAverages, "CareerAverages", {false, false}},
    {StrategyId::TournamentStats, "TournamentStats", {false, true}},
    {StrategyId::CareerPoints, "CareerPoints", {true, false}},
    {StrategyId::Random2, "Random2", {false, false}},
    {StrategyId::MA1, "MA1", {true, true}},
    {StrategyId::AllrounderPref, "AllrounderPref", {true, true}},
    {StrategyId::MeanVarOptimization, "MeanVarOptimization", {true, true}},
    {StrategyId::TopsisSynthesis, "TopsisSynthesis", {true, false}},
    {StrategyId::TopsisAHP, "TopsisAHP", {true, false}},
    {StrategyId::TopsisShannon, "TopsisShannon", {true, false}},
    {StrategyId::PopularitySelection, "PopularitySelection", {false, false}},
};

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) out.push_back(static_cast<char>(std::tolower(uc)));
  }
  return out;
}

constexpr std::string_view kMetricNames[] = {"BattingAverage", "StrikeRate", "Runs",
                                             "Boundaries",     "Wickets",    "Economy"};

// Rejection attempts before a random fill falls back to a shuffled greedy fill.
constexpr int kMaxRejections = 4000;

// The pool as indices, with each player's side (0 = team_a, 1 = team_b).
class PoolView {
 public:
  PoolView(std::span<const PlayerRecord> pool, const MatchInfo& match) : pool_(pool), side_(pool.size()) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].team_id == match.team_a) {
        side_[i] = 0;
      } else if (pool[i].team_id == match.team_b) {
        side_[i] = 1;
      } else {
        throw DatasetIntegrityError(fmt::format("match {}: pool player '{}' is on neither side",
                                                match.match_id, pool[i].player_id));
      }
    }
  }

  std::size_t size() const noexcept { return pool_.size(); }
  const PlayerRecord& player(std::size_t i) const { return pool_[i]; }
  int side(std::size_t i) const { return side_[i]; }
  std::span<const PlayerRecord> pool() const noexcept { return pool_; }

  CellCounts counts(std::span<const std::size_t> members) const {
    CellCounts c;
    for (std::size_t i : members) c.add(pool_[i].role, side_[i]);
    return c;
  }

  std::vector<std::size_t> all() const {
    std::vector<std::size_t> idx(pool_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }

  FantasyTeam team(std::span<const std::size_t> members) const {
    std::vector<std::string> ids;
    ids.reserve(members.size());
    for (std::size_t i : members) ids.push_back(pool_[i].player_id);
    return FantasyTeam(std::move(ids));
  }

 private:
  std::span<const PlayerRecord> pool_;
  std::vector<int> side_;
};

bool is_valid(const CellCounts& team, const ConstraintSet& cs) {
  return team.total() == cs.team_size && min_players_to_satisfy(team, CellCounts{}, cs) == 0;
}

[[noreturn]] void throw_infeasible(const PoolView& view, const ConstraintSet& cs, std::string_view what) {
  std::string detail;
  for (const auto& v : pool_infeasibility(view.pool(), cs)) detail += fmt::format(" [{}: {}]", v.rule, v.detail);
  if (detail.empty()) detail = " [locked players leave no valid completion]";
  throw InfeasibleError(fmt::format("{}: infeasible selection{}", what, detail));
}

// Walks `order` taking each player unless doing so would leave the rest of the
// order unable to complete a valid team.
std::vector<std::size_t> greedy_fill(const PoolView& view, std::span<const std::size_t> order,
                                     const ConstraintSet& cs, std::vector<std::size_t> locked,
                                     std::string_view what) {
  CellCounts chosen = view.counts(locked);
  CellCounts remaining = view.counts(order);
  if (!can_complete(chosen, remaining, cs)) throw_infeasible(view, cs, what);
  for (std::size_t i : order) {
    if (static_cast<int>(locked.size()) >= cs.team_size) break;
    const auto& p = view.player(i);
    remaining.add(p.role, view.side(i), -1);
    CellCounts with = chosen;
    with.add(p.role, view.side(i));
    if (can_complete(with, remaining, cs)) {
      chosen = with;
      locked.push_back(i);
    }
  }
  return locked;
}

// Uniform over valid completions of `locked` drawn from `candidates`, by
// rejection; falls back to a shuffled greedy fill if rejection keeps failing.
std::vector<std::size_t> random_fill(const PoolView& view, std::vector<std::size_t> locked,
                                     std::vector<std::size_t> candidates, const ConstraintSet& cs, Rng& rng,
                                     std::string_view what) {
  const auto need = static_cast<std::size_t>(cs.team_size) - locked.size();
  const CellCounts base = view.counts(locked);
  if (!can_complete(base, view.counts(candidates), cs)) throw_infeasible(view, cs, what);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    CellCounts trial = base;
    for (std::size_t k = 0; k < need; ++k) {
      const auto j = k + rng.below(candidates.size() - k);
      std::swap(candidates[k], candidates[j]);
      trial.add(view.player(candidates[k]).role, view.side(candidates[k]));
    }
    if (is_valid(trial, cs)) {
      locked.insert(locked.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(need));
      return locked;
    }
  }
  rng.shuffle(candidates.begin(), candidates.end());
  return greedy_fill(view, candidates, cs, std::move(locked), what);
}

std::vector<std::size_t> rank_order(const PoolView& view, std::span<const double> score) {
  auto order = view.all();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return view.player(a).player_id < view.player(b).player_id;
  });
  return order;
}

FantasyTeam ranked_pick(const PoolView& view, std::span<const double> score, const ConstraintSet& cs,
                        std::string_view what) {
  const auto order = rank_order(view, score);
  return view.team(greedy_fill(view, order, cs, {}, what));
}

std::vector<std::size_t> without(const PoolView& view, std::span<const std::size_t> excluded) {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) rest.push_back(i);
  }
  return rest;
}

// Best player of `role` (any role if nullopt) by `key`, skipping `taken`;
// ties to the smaller id.
template <class Key>
std::optional<std::size_t> leader(const PoolView& view, std::optional<PlayerRole> role,
                                  std::span<const std::size_t> taken, Key key) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (role && view.player(i).role != *role) continue;
    if (std::find(taken.begin(), taken.end(), i) != taken.end()) continue;
    if (!best || key(i) > key(*best) ||
        (key(i) == key(*best) && view.player(i).player_id < view.player(*best).player_id)) {
      best = i;
    }
  }
  return best;
}

// Locks the given players (dropping the latest locks while they leave no
// valid completion), then fills the rest uniformly at random.
FantasyTeam locked_random(const PoolView& view, std::vector<std::size_t> locks, const ConstraintSet& cs, Rng& rng,
                          std::string_view what) {
  while (!locks.empty() && !can_complete(view.counts(locks), view.counts(without(view, locks)), cs)) {
    locks.pop_back();
  }
  auto rest = without(view, locks);
  return view.team(random_fill(view, std::move(locks), std::move(rest), cs, rng, what));
}

const CareerStats& career_of(const MatchContext& ctx, std::string_view id) {
  static const CareerStats kZero{};
  const auto it = ctx.careers.find(id);
  return it == ctx.careers.end() ? kZero : it->second;
}

FantasyTeam select_fav_team(const PoolView& view, const ConstraintSet& cs, const StrategyParams& params,
                            Rng& rng) {
  const int favourite = static_cast<int>(rng.below(2));
  std::vector<std::size_t> fav, other;
  for (std::size_t i = 0; i < view.size(); ++i) (view.side(i) == favourite ? fav : other).push_back(i);
  const auto take_fav = static_cast<std::size_t>(std::min(params.fav_team_majority, cs.team_size));
  const auto take_other = static_cast<std::size_t>(cs.team_size) - take_fav;
  if (fav.size() >= take_fav && other.size() >= take_other) {
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      std::vector<std::size_t> pick;
      for (std::size_t k = 0; k < take_fav; ++k) {
        std::swap(fav[k], fav[k + rng.below(fav.size() - k)]);
        pick.push_back(fav[k]);
      }
      for (std::size_t k = 0; k < take_other; ++k) {
        std::swap(other[k], other[k + rng.below(other.size() - k)]);
        pick.push_back(other[k]);
      }
      if (is_valid(view.counts(pick), cs)) return view.team(pick);
    }
  }
  // No valid split of that shape: prefer the favourite side, stay valid.
  rng.shuffle(fav.begin(), fav.end());
  rng.shuffle(other.begin(), other.end());
  std::vector<std::size_t> order = fav;
  order.insert(order.end(), other.begin(), other.end());
  return view.team(greedy_fill(view, order, cs, {}, "FavTeam"));
}

FantasyTeam select_allrounders(const PoolView& view, const ConstraintSet& cs, Rng& rng) {
  std::vector<std::size_t> allrounders, others;
  for (std::size_t i = 0; i < view.size(); ++i) {
    (view.player(i).role == PlayerRole::Allrounder ? allrounders : others).push_back(i);
  }
  rng.shuffle(allrounders.begin(), allrounders.end());
  const CellCounts rest = view.counts(others);
  auto k = std::min(allrounders.size(), static_cast<std::size_t>(cs.team_size));
  for (;; --k) {
    const std::span<const std::size_t> locked(allrounders.data(), k);
    if (can_complete(view.counts(locked), rest, cs)) break;
    if (k == 0) throw_infeasible(view, cs, "AllrounderSelectAll");
  }
  std::vector<std::size_t> locked(allrounders.begin(), allrounders.begin() + static_cast<std::ptrdiff_t>(k));
  return view.team(random_fill(view, std::move(locked), std::move(others), cs, rng, "AllrounderSelectAll"));
}

FantasyTeam select_career_averages(const PoolView& view, const MatchContext& ctx, const ConstraintSet& cs,
                                   Rng& rng) {
  const auto average = [&](std::size_t i) { return career_of(ctx, view.player(i).player_id).batting_average; };
  const auto wickets = [&](std::size_t i) {
    return static_cast<double>(career_of(ctx, view.player(i).player_id).career_wickets);
  };
  std::vector<std::size_t> locks;
  const auto lock = [&](PlayerRole role, auto key) {
    if (auto best = leader(view, role, locks, key)) locks.push_back(*best);
  };
  lock(PlayerRole::Batter, average);
  lock(PlayerRole::Wicketkeeper, average);
  lock(PlayerRole::Allrounder, average);
  lock(PlayerRole::Bowler, wickets);
  lock(PlayerRole::Allrounder, wickets);
  return locked_random(view, std::move(locks), cs, rng, "CareerAverages");
}

FantasyTeam select_tournament_stats(const PoolView& view, const MatchContext& ctx, const ConstraintSet& cs,
                                    Rng& rng) {
  const auto totals = [&](std::size_t i) -> const TournamentTotals& {
    return ctx.history.totals(view.player(i).player_id);
  };
  std::vector<std::size_t> locks;
  const auto lock = [&](auto key) {
    if (auto best = leader(view, std::nullopt, locks, key)) locks.push_back(*best);
  };
  lock([&](std::size_t i) { return static_cast<double>(totals(i).runs); });
  lock([&](std::size_t i) { return static_cast<double>(totals(i).wickets); });
  lock([&](std::size_t i) { return static_cast<double>(totals(i).boundaries()); });
  return locked_random(view, std::move(locks), cs, rng, "TournamentStats");
}

std::vector<double> form_scores(const PoolView& view, const MatchContext& ctx, int window, double fallback) {
  std::vector<double> s(view.size());
  for (std::size_t i = 0; i < view.size(); ++i) s[i] = compute_form(view.player(i).player_id, ctx.history, window, fallback);
  return s;
}

double metric_value(TopsisMetric metric, const TournamentTotals& t) {
  switch (metric) {
    case TopsisMetric::BattingAverage: return t.innings_batted ? static_cast<double>(t.runs) / t.innings_batted : 0.0;
    case TopsisMetric::StrikeRate: return t.balls_faced ? 100.0 * t.runs / t.balls_faced : 0.0;
    case TopsisMetric::Runs: return t.runs;
    case TopsisMetric::Boundaries: return t.boundaries();
    case TopsisMetric::Wickets: return t.wickets;
    case TopsisMetric::Economy: return t.balls_bowled ? 6.0 * t.runs_conceded / t.balls_bowled : 0.0;
  }
  return 0.0;
}

Matrix ones(std::size_t n) { return Matrix(n, n, 1.0); }

}  // namespace

StrategyTraits traits(StrategyId strategy) noexcept { return kStrategies[strategy_index(strategy)].traits; }

std::string_view strategy_name(StrategyId strategy) noexcept { return kStrategies[strategy_index(strategy)].name; }

std::optional<StrategyId> parse_strategy(std::string_view name) {
  const std::string key = fold(name);
  for (const auto& info : kStrategies) {
    if (fold(info.name) == key) return info.id;
  }
  return std::nullopt;
}

std::string_view to_string(TopsisMetric metric) noexcept { return kMetricNames[static_cast<std::size_t>(metric)]; }

std::optional<TopsisMetric> parse_topsis_metric(std::string_view name) {
  const std::string key = fold(name);
  for (std::size_t i = 0; i < std::size(kMetricNames); ++i) {
    if (fold(kMetricNames[i]) == key) return static_cast<TopsisMetric>(i);
  }
  return std::nullopt;
}

void StrategyParams::validate() const {
  for (int w : {ma5_window, ma1_window, mean_var_window}) {
    if (w < 1) throw ParameterError("form windows must be at least 1");
  }
  if (!(risk_aversion >= 0)) throw ParameterError("risk_aversion must be >= 0");
  if (fav_team_majority < 0 || fav_team_majority > base_constraints.team_size) {
    throw ParameterError("fav_team_majority must lie in [0, team_size]");
  }
  for (StrategyId s : kAllStrategies) constraints_for(s, *this).validate();
  const auto check_ahp = [](const Matrix& m, const std::vector<TopsisCriterion>& criteria, std::string_view group) {
    if (criteria.empty()) throw ParameterError(fmt::format("{} TOPSIS criteria list is empty", group));
    if (m.empty()) return;
    if (m.rows() != criteria.size()) {
      throw ParameterError(fmt::format("{} AHP matrix is {}x{}, criteria count is {}", group, m.rows(), m.cols(),
                                       criteria.size()));
    }
    ahp_weights(m);
  };
  check_ahp(ahp_batting, batting_criteria, "batting");
  check_ahp(ahp_bowling, bowling_criteria, "bowling");
  check_ahp(ahp_allrounder, allrounder_criteria, "allrounder");
}

ConstraintSet constraints_for(StrategyId strategy, const StrategyParams& params) {
  ConstraintSet cs = params.base_constraints;
  auto& batters = cs.min_per_role[role_index(PlayerRole::Batter)];
  auto& allrounders = cs.min_per_role[role_index(PlayerRole::Allrounder)];
  if (strategy == StrategyId::Random2) batters = std::max(batters, params.random2_batter_min);
  if (strategy == StrategyId::AllrounderPref) allrounders = std::max(allrounders, params.allrounder_min);
  return cs;
}

PopularityTally PopularityTally::from(std::span<const FantasyTeam> entries) {
  PopularityTally tally;
  for (const auto& t : entries) tally.add(t);
  return tally;
}

void PopularityTally::add(const FantasyTeam& team) {
  for (const auto& id : team.players()) {
    auto it = counts_.find(id);
    if (it == counts_.end()) {
      counts_.emplace(id, 1);
    } else {
      ++it->second;
    }
  }
  ++entries_;
}

int PopularityTally::count(std::string_view player_id) const {
  const auto it = counts_.find(player_id);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<double> topsis_scores(StrategyId scheme, const MatchContext& ctx, const StrategyParams& params) {
  struct Group {
    std::vector<PlayerRole> roles;
    const std::vector<TopsisCriterion>* criteria;
    const Matrix* ahp;
  };
  const Group groups[] = {
      {{PlayerRole::Batter, PlayerRole::Wicketkeeper}, &params.batting_criteria, &params.ahp_batting},
      {{PlayerRole::Bowler}, &params.bowling_criteria, &params.ahp_bowling},
      {{PlayerRole::Allrounder}, &params.allrounder_criteria, &params.ahp_allrounder},
  };
  std::vector<double> score(ctx.pool.size(), 0.0);
  for (const auto& g : groups) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ctx.pool.size(); ++i) {
      if (std::find(g.roles.begin(), g.roles.end(), ctx.pool[i].role) != g.roles.end()) members.push_back(i);
    }
    if (members.empty()) continue;
    const auto& criteria = *g.criteria;
    Matrix decision(members.size(), criteria.size());
    std::vector<Orientation> orientation;
    std::vector<std::string> labels;
    for (const auto& c : criteria) orientation.push_back(c.orientation);
    for (std::size_t r = 0; r < members.size(); ++r) labels.push_back(ctx.pool[members[r]].player_id);
    for (std::size_t c = 0; c < criteria.size(); ++c) {
      // Economy is undefined for players who have not bowled; they take the
      // group's worst observed economy.
      double worst_economy = 0;
      for (std::size_t r = 0; r < members.size(); ++r) {
        const auto& t = ctx.history.totals(labels[r]);
        decision(r, c) = metric_value(criteria[c].metric, t);
        if (criteria[c].metric == TopsisMetric::Economy && t.balls_bowled > 0) {
          worst_economy = std::max(worst_economy, decision(r, c));
        }
      }
      if (criteria[c].metric == TopsisMetric::Economy) {
        for (std::size_t r = 0; r < members.size(); ++r) {
          if (ctx.history.totals(labels[r]).balls_bowled == 0) decision(r, c) = worst_economy;
        }
      }
    }
    const Matrix pairwise = g.ahp->empty() ? ones(criteria.size()) : *g.ahp;
    std::vector<double> weights;
    switch (scheme) {
      case StrategyId::TopsisAHP: weights = ahp_weights(pairwise).weights; break;
      case StrategyId::TopsisShannon: weights = shannon_entropy_weights(decision); break;
      case StrategyId::TopsisSynthesis:
        weights = synthesis_weights(ahp_weights(pairwise).weights, shannon_entropy_weights(decision));
        break;
      default: throw ParameterError("topsis_scores: not a TOPSIS strategy");
    }
    const auto ranked = topsis_rank(decision, orientation, weights, labels);
    for (std::size_t r = 0; r < members.size(); ++r) score[members[r]] = ranked.closeness[r];
  }
  return score;
}

FantasyTeam select_team(StrategyId strategy, const MatchContext& ctx, const StrategyParams& params, Rng& rng) {
  const PoolView view(ctx.pool, ctx.match);
  const ConstraintSet cs = constraints_for(strategy, params);
  const std::string_view what = strategy_name(strategy);
  switch (strategy) {
    case StrategyId::Random1:
    case StrategyId::Random2:
      return view.team(random_fill(view, {}, view.all(), cs, rng, what));
    case StrategyId::FavTeam:
      return select_fav_team(view, cs, params, rng);
    case StrategyId::AllrounderSelectAll:
      return select_allrounders(view, cs, rng);
    case StrategyId::MA5:
      return ranked_pick(view, form_scores(view, ctx, params.ma5_window, params.fallback_form), cs, what);
    case StrategyId::MA1:
    case StrategyId::AllrounderPref:
      return ranked_pick(view, form_scores(view, ctx, params.ma1_window, params.fallback_form), cs, what);
    case StrategyId::CareerAverages:
      return select_career_averages(view, ctx, cs, rng);
    case StrategyId::TournamentStats:
      return select_tournament_stats(view, ctx, cs, rng);
    case StrategyId::CareerPoints: {
      std::vector<double> s(view.size());
      for (std::size_t i = 0; i < view.size(); ++i) {
        s[i] = career_point_rate(career_of(ctx, view.player(i).player_id), ctx.rules);
      }
      return ranked_pick(view, s, cs, what);
    }
    case StrategyId::MeanVarOptimization: {
      std::vector<double> form(view.size()), var(view.size());
      for (std::size_t i = 0; i < view.size(); ++i) {
        const auto& id = view.player(i).player_id;
        form[i] = compute_form(id, ctx.history, params.mean_var_window, params.fallback_form);
        var[i] = form_variance(id, ctx.history, params.mean_var_window);
      }
      return mean_variance_select(ctx.pool, form, var, params.risk_aversion, cs);
    }
    case StrategyId::TopsisSynthesis:
    case StrategyId::TopsisAHP:
    case StrategyId::TopsisShannon:
      return ranked_pick(view, topsis_scores(strategy, ctx, params), cs, what);
    case StrategyId::PopularitySelection: {
      if (ctx.prior_entries.entries() == 0) return view.team(random_fill(view, {}, view.all(), cs, rng, what));
      std::vector<double> s(view.size());
      for (std::size_t i = 0; i < view.size(); ++i) s[i] = ctx.prior_entries.count(view.player(i).player_id);
      return ranked_pick(view, s, cs, what);
    }
  }
  throw ParameterError("select_team: unknown strategy");
}

}  // namespace fantasy
