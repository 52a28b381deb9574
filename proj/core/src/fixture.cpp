#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "fantasy/ingestion.hpp"
#include "fantasy/rng.hpp"

namespace fantasy {

namespace {

constexpr std::uint64_t kProfileStream = 1;
constexpr std::uint64_t kCareerStream = 2;
constexpr std::uint64_t kMatchStream = 3;

struct SquadPlayer {
  PlayerRecord record;
  PerformanceProfile base;
  PerformanceProfile season;
  bool hot = false;
};

PerformanceProfile role_default(PlayerRole role) {
  switch (role) {
    case PlayerRole::Batter: return {24.0, 0.0};
    case PlayerRole::Bowler: return {5.0, 1.1};
    case PlayerRole::Allrounder: return {16.0, 0.7};
    case PlayerRole::Wicketkeeper: return {20.0, 0.0};
  }
  return {};
}

int poisson(Rng& rng, double lambda) {
  if (lambda <= 0) return 0;
  const double limit = std::exp(-lambda);
  int k = 0;
  for (double p = rng.uniform(); p > limit; p *= rng.uniform()) ++k;
  return k;
}

int exponential_count(Rng& rng, double mean, int cap) {
  if (mean <= 0) return 0;
  const double draw = -mean * std::log1p(-rng.uniform());
  return std::min(cap, static_cast<int>(std::floor(draw)));
}

int role_need(int mix) { return std::min(mix, 2); }

/// Batting order rank: specialists first, bowlers last.
int batting_slot(PlayerRole r) {
  switch (r) {
    case PlayerRole::Batter: return 0;
    case PlayerRole::Wicketkeeper: return 1;
    case PlayerRole::Allrounder: return 2;
    case PlayerRole::Bowler: return 3;
  }
  return 4;
}

class MatchSimulator {
 public:
  MatchSimulator(const std::vector<SquadPlayer>& squad, Rng& rng) : squad_(squad), rng_(rng) {}

  /// Playing XI plus an optional impact player, as squad indices in squad order.
  std::vector<std::size_t> pick_side(const std::vector<std::size_t>& members, const FixtureConfig& cfg) {
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> rest;
    for (auto i : members) (squad_[i].hot ? chosen : rest).push_back(i);
    rng_.shuffle(rest.begin(), rest.end());
    for (auto role : kAllRoles) {
      const int need = role_need(cfg.role_mix[role_index(role)]);
      int have = static_cast<int>(std::count_if(chosen.begin(), chosen.end(),
                                                [&](std::size_t i) { return squad_[i].record.role == role; }));
      for (auto it = rest.begin(); it != rest.end() && have < need;) {
        if (squad_[*it].record.role == role) {
          chosen.push_back(*it);
          it = rest.erase(it);
          ++have;
        } else {
          ++it;
        }
      }
    }
    while (chosen.size() < 11) {
      chosen.push_back(rest.back());
      rest.pop_back();
    }
    if (!rest.empty() && rng_.bernoulli(cfg.impact_probability)) chosen.push_back(rest.back());
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  void innings(const std::vector<std::size_t>& batting, const std::vector<std::size_t>& fielding,
               std::unordered_map<std::size_t, PlayerMatchStats>& stats) {
    auto order = batting;
    rng_.shuffle(order.begin(), order.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return batting_slot(squad_[a].record.role) < batting_slot(squad_[b].record.role);
    });
    const auto batted = std::min<std::size_t>(order.size(), 3 + rng_.below(9));
    for (std::size_t k = 0; k < batted; ++k) {
      auto& s = stats[order[k]];
      s.did_bat = true;
      s.runs = exponential_count(rng_, squad_[order[k]].season.mean_runs, 150);
      if (s.runs == 0) {
        s.balls_faced = 1 + static_cast<int>(rng_.below(6));
      } else {
        s.balls_faced = std::max(1, static_cast<int>(std::lround(s.runs / rng_.uniform(0.9, 1.7))));
      }
      const int boundary_runs = static_cast<int>(std::floor(s.runs * rng_.uniform(0.2, 0.6)));
      s.sixes = static_cast<int>(rng_.below(static_cast<std::uint64_t>(boundary_runs / 6 + 1)));
      s.fours = (boundary_runs - 6 * s.sixes) / 4;
    }

    auto attack = fielding;
    rng_.shuffle(attack.begin(), attack.end());
    std::stable_sort(attack.begin(), attack.end(), [&](std::size_t a, std::size_t b) {
      return squad_[a].season.wicket_rate > 0 && squad_[b].season.wicket_rate <= 0;
    });
    attack.resize(std::min<std::size_t>(attack.size(), 5));
    int wickets_left = static_cast<int>(std::min<std::size_t>(10, batted));
    std::optional<std::size_t> keeper;
    for (auto i : fielding) {
      if (squad_[i].record.role == PlayerRole::Wicketkeeper) keeper = i;
    }
    for (auto b : attack) {
      auto& s = stats[b];
      s.balls_bowled = 24;
      s.runs_conceded = static_cast<int>(std::lround(24 * rng_.uniform(6.0, 11.0) / 6.0));
      for (int over = 0; over < 4; ++over) s.maidens += rng_.bernoulli(0.04) ? 1 : 0;
      const double rate = std::max(squad_[b].season.wicket_rate, 0.1);
      s.wickets = std::min(wickets_left, poisson(rng_, rate));
      wickets_left -= s.wickets;
      for (int w = 0; w < s.wickets; ++w) {
        if (keeper && rng_.bernoulli(0.05)) {
          ++stats[*keeper].stumpings;
        } else if (rng_.bernoulli(0.6)) {
          ++stats[fielding[rng_.below(fielding.size())]].catches;
        }
      }
    }
    for (int r = poisson(rng_, 0.3); r > 0; --r) ++stats[fielding[rng_.below(fielding.size())]].runouts;
  }

 private:
  const std::vector<SquadPlayer>& squad_;
  Rng& rng_;
};

CareerStats career_for(const SquadPlayer& p, Rng& rng) {
  CareerStats c;
  c.player_id = p.record.player_id;
  const bool bowls = p.base.wicket_rate > 0;
  c.innings_batted = static_cast<int>(p.record.role == PlayerRole::Bowler ? 5 + rng.below(40) : 10 + rng.below(90));
  c.career_runs = static_cast<int>(std::lround(c.innings_batted * p.base.mean_runs * rng.uniform(0.85, 1.15)));
  const int outs = std::max(1, static_cast<int>(std::lround(c.innings_batted * 0.85)));
  c.batting_average = std::round(100.0 * c.career_runs / outs) / 100.0;
  c.career_fours = static_cast<int>(std::lround(c.career_runs * 0.1 * rng.uniform(0.7, 1.3)));
  c.career_sixes = static_cast<int>(std::lround(c.career_runs * 0.04 * rng.uniform(0.5, 1.5)));
  c.innings_bowled = static_cast<int>(bowls ? 10 + rng.below(90) : rng.below(3));
  c.career_wickets = static_cast<int>(std::lround(c.innings_bowled * std::max(p.base.wicket_rate, 0.1) *
                                                  rng.uniform(0.8, 1.2)));
  c.career_maidens = static_cast<int>(std::lround(c.innings_bowled * 0.15 * rng.uniform()));
  c.career_catches = static_cast<int>(std::lround(c.innings_batted * 0.3 * rng.uniform()));
  if (p.record.role == PlayerRole::Wicketkeeper) {
    c.career_stumpings = static_cast<int>(std::lround(c.innings_batted * 0.1 * rng.uniform()));
  }
  if (c.innings_batted == 0) c.batting_average = 0;
  return c;
}

}  // namespace

void FixtureConfig::validate() const {
  if (n_teams < 2) throw ConfigError("fixture: n_teams must be at least 2");
  if (players_per_team < 11) throw ConfigError("fixture: players_per_team must be at least 11");
  if (n_matches < 1) throw ConfigError("fixture: n_matches must be at least 1");
  int total = 0;
  int need = 0;
  for (auto role : kAllRoles) {
    const int mix = role_mix[role_index(role)];
    if (mix < 1) throw ConfigError(fmt::format("fixture: role_mix needs at least one {}", to_string(role)));
    total += mix;
    need += role_need(mix);
  }
  if (total != players_per_team) {
    throw ConfigError(fmt::format("fixture: role_mix sums to {}, expected {}", total, players_per_team));
  }
  if (hot_players_per_team < 0 || hot_players_per_team + need > 11) {
    throw ConfigError(fmt::format("fixture: {} hot players do not fit an eleven that needs {} role slots",
                                  hot_players_per_team, need));
  }
  if (!(hot_multiplier > 0) || !std::isfinite(hot_multiplier)) {
    throw ConfigError("fixture: hot_multiplier must be positive");
  }
  if (!(impact_probability >= 0 && impact_probability <= 1)) {
    throw ConfigError("fixture: impact_probability must lie in [0, 1]");
  }
  if (!profiles.empty()) {
    if (profiles.size() != static_cast<std::size_t>(n_teams) * static_cast<std::size_t>(players_per_team)) {
      throw ConfigError(fmt::format("fixture: {} profiles given for {} players", profiles.size(),
                                    n_teams * players_per_team));
    }
    for (const auto& p : profiles) {
      if (!(p.mean_runs >= 0) || !(p.wicket_rate >= 0) || !std::isfinite(p.mean_runs) ||
          !std::isfinite(p.wicket_rate)) {
        throw ConfigError("fixture: profiles must be finite and non-negative");
      }
    }
  }
}

TournamentDataset generate_fixture(const FixtureConfig& config) {
  config.validate();

  std::vector<SquadPlayer> squad;
  std::vector<std::vector<std::size_t>> teams(static_cast<std::size_t>(config.n_teams));
  Rng profile_rng(derive_seed(config.seed, {kProfileStream}));
  for (int t = 0; t < config.n_teams; ++t) {
    const auto team_id = fmt::format("T{}", t + 1);
    int number = 0;
    for (auto role : kAllRoles) {
      for (int k = 0; k < config.role_mix[role_index(role)]; ++k) {
        SquadPlayer p;
        p.record.player_id = fmt::format("{}P{:02d}", team_id, ++number);
        p.record.name = p.record.player_id;
        p.record.role = role;
        p.record.team_id = team_id;
        if (config.profiles.empty()) {
          const auto d = role_default(role);
          p.base = {d.mean_runs * profile_rng.uniform(0.6, 1.4), d.wicket_rate * profile_rng.uniform(0.6, 1.4)};
        } else {
          p.base = config.profiles[squad.size()];
        }
        teams[static_cast<std::size_t>(t)].push_back(squad.size());
        squad.push_back(std::move(p));
      }
    }
    auto members = teams[static_cast<std::size_t>(t)];
    profile_rng.shuffle(members.begin(), members.end());
    for (int h = 0; h < config.hot_players_per_team; ++h) squad[members[static_cast<std::size_t>(h)]].hot = true;
  }
  for (auto& p : squad) {
    p.season = p.base;
    if (p.hot) {
      p.season.mean_runs *= config.hot_multiplier;
      p.season.wicket_rate *= config.hot_multiplier;
    }
  }

  std::vector<std::pair<int, int>> pairings;
  for (int a = 0; a < config.n_teams; ++a) {
    for (int b = a + 1; b < config.n_teams; ++b) pairings.emplace_back(a, b);
  }

  TournamentDataset out;
  std::unordered_set<std::size_t> appeared;
  std::vector<std::size_t> appearance_order;
  for (int m = 0; m < config.n_matches; ++m) {
    Rng rng(derive_seed(config.seed, {kMatchStream, static_cast<std::uint64_t>(m)}));
    auto [a, b] = pairings[static_cast<std::size_t>(m) % pairings.size()];
    if ((m / static_cast<int>(pairings.size())) % 2 == 1) std::swap(a, b);

    MatchSimulator sim(squad, rng);
    const auto side_a = sim.pick_side(teams[static_cast<std::size_t>(a)], config);
    const auto side_b = sim.pick_side(teams[static_cast<std::size_t>(b)], config);
    std::unordered_map<std::size_t, PlayerMatchStats> stats;
    sim.innings(side_a, side_b, stats);
    sim.innings(side_b, side_a, stats);

    MatchScorecard card;
    card.match_id = fmt::format("M{:03d}", m + 1);
    card.match_index = m + 1;
    card.team_a = fmt::format("T{}", a + 1);
    card.team_b = fmt::format("T{}", b + 1);
    for (const auto* side : {&side_a, &side_b}) {
      for (auto i : *side) {
        card.roster.push_back(RosterEntry{squad[i].record.player_id, stats[i]});
        if (appeared.insert(i).second) appearance_order.push_back(i);
      }
    }
    out.matches.push_back(std::move(card));
  }

  Rng career_rng(derive_seed(config.seed, {kCareerStream}));
  std::vector<CareerStats> careers(squad.size());
  for (std::size_t i = 0; i < squad.size(); ++i) careers[i] = career_for(squad[i], career_rng);
  for (auto i : appearance_order) {
    out.players.push_back(squad[i].record);
    out.careers.push_back(careers[i]);
  }
  check_dataset(out);
  return out;
}

}  // namespace fantasy
