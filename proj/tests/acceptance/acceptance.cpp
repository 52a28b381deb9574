// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <fmt/format.h>

#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "fantasy/contest.hpp"
#include "fantasy/dynamics.hpp"
#include "fantasy/errors.hpp"
#include "fantasy/ingestion.hpp"
#include "fantasy/mcdm.hpp"
#include "fantasy/metrics.hpp"
#include "fantasy/optimizer.hpp"
#include "fantasy/team.hpp"

namespace fantasy {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few messages become the detail line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++failures_ <= 3) messages_.push_back(what);
  }
  Outcome done(std::string summary) const {
    if (pass_) return {true, std::move(summary)};
    std::string d = fmt::format("{} failure(s): ", failures_);
    for (std::size_t i = 0; i < messages_.size(); ++i) d += (i ? "; " : "") + messages_[i];
    return {false, d};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::vector<std::string> messages_;
};

TournamentDataset fixture(int matches, std::uint64_t seed) {
  FixtureConfig cfg;
  cfg.n_matches = matches;
  cfg.seed = seed;
  return generate_fixture(cfg);
}

Outcome ac1_payoff_structures() {
  Check c;
  const auto mega = make_payoff_structure(ContestKind::Mega);
  const auto fourx = make_payoff_structure(ContestKind::FourX);
  c.expect(mega.prize_pool() == 527245, fmt::format("mega pool {}", mega.prize_pool()));
  c.expect(mega.capacity() == 1500 && mega.entry_fee == 500, "mega capacity/fee");
  c.expect(fourx.prize_pool() == 120000, fmt::format("fourx pool {}", fourx.prize_pool()));
  c.expect(fourx.prize_pool() * 10 == 8 * fourx.capacity() * fourx.entry_fee, "fourx pool is not 80% of fees");
  c.expect(fourx.paid_ranks() * 5 == fourx.capacity(), fmt::format("fourx winners {}", fourx.paid_ranks()));
  return c.done(fmt::format("mega pool {}, fourx pool {}, fourx winners {}/{}", mega.prize_pool(),
                            fourx.prize_pool(), fourx.paid_ranks(), fourx.capacity()));
}

Outcome ac2_conservation() {
  Check c;
  const auto ds = fixture(6, 101);
  const auto inputs = SimulationInputs::from(ds);
  const auto roster = make_roster(kAllStrategies, 100);
  int contests = 0;
  for (auto [kind, expected] : {std::pair{ContestKind::Mega, Money{-222755}}, std::pair{ContestKind::FourX, Money{-30000}}}) {
    const auto structure = make_payoff_structure(kind);
    c.expect(structure.prize_pool() - 1500 * structure.entry_fee == expected, "expected net total");
    for (const auto& r : run_season(std::span<const MatchScorecard>(ds.matches), inputs, roster, structure, 7)) {
      c.expect(r.agents.size() == 1500, "agent count");
      c.expect(r.total_net_payoff() == expected,
               fmt::format("{} {}: net {}", to_string(kind), r.match_id, r.total_net_payoff()));
      ++contests;
    }
  }
  return c.done(fmt::format("{} contests conserve (mega -222755, fourx -30000)", contests));
}

Outcome ac3_trait_law() {
  Check c;
  const auto ds = fixture(8, 103);
  const auto inputs = SimulationInputs::from(ds);
  SeasonHistory history(inputs.rules);
  for (std::size_t k = 0; k < 7; ++k) history.append(ds.matches[k], inputs.players);
  const auto& match = ds.matches[7];
  const auto pool = build_selection_pool(match, inputs.players);
  const MatchInfo info{match.match_id, match.team_a, match.team_b};
  const auto roster = make_roster(kAllStrategies, 100);

  std::array<std::set<FantasyTeam>, kStrategyCount> teams;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<int> order(roster.size());
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle(derive_seed(0xac3, {seed}));
    shuffle.shuffle(order.begin(), order.end());
    PopularityTally tally;
    const MatchContext ctx{info, pool, history, inputs.careers, tally, inputs.rules};
    for (int agent : order) {
      const auto s = roster[static_cast<std::size_t>(agent)];
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(agent)}));
      const auto team = select_team(s, ctx, inputs.params, rng);
      teams[strategy_index(s)].insert(team);
      tally.add(team);
    }
  }
  std::string counts;
  for (auto s : kAllStrategies) {
    const auto n = teams[strategy_index(s)].size();
    counts += fmt::format("{}{}={}", counts.empty() ? "" : " ", strategy_name(s), n);
    if (traits(s).deterministic) {
      c.expect(n == 1, fmt::format("{} gave {} teams", strategy_name(s), n));
    } else {
      c.expect(n >= 2, fmt::format("{} gave {} team", strategy_name(s), n));
    }
  }
  return c.done("distinct teams: " + counts);
}

Outcome ac4_constraint_law(std::vector<MatchSummary>& summaries_out) {
  Check c;
  const auto ds = fixture(20, 104);
  const auto inputs = SimulationInputs::from(ds);
  const auto roster = make_roster(kAllStrategies, 100);
  const auto season = run_season(std::span<const MatchScorecard>(ds.matches), inputs, roster,
                                 make_payoff_structure(ContestKind::Mega), 4);
  std::size_t checked = 0;
  for (std::size_t k = 0; k < season.size(); ++k) {
    const auto pool = build_selection_pool(ds.matches[k], inputs.players);
    for (const auto& a : season[k].agents) {
      const auto verdict = validate_team(a.team, pool, constraints_for(a.strategy, inputs.params));
      c.expect(verdict.ok(), fmt::format("{} in {}: {}", strategy_name(a.strategy), season[k].match_id,
                                         verdict.ok() ? "" : verdict.violations.front().rule));
      ++checked;
    }
    summaries_out.push_back(match_strategy_summary(season[k], kAllStrategies));
  }
  return c.done(fmt::format("{} teams valid over {} matches", checked, season.size()));
}

std::optional<FantasyTeam> brute_force(const std::vector<PlayerRecord>& pool, const std::vector<double>& form,
                                       const std::vector<double>& variance, double lambda, const ConstraintSet& cs) {
  std::optional<std::vector<std::string>> best;
  double best_value = 0;
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    if (std::popcount(mask) != cs.team_size) continue;
    std::vector<std::string> ids;
    double value = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1u << i)) {
        ids.push_back(pool[i].player_id);
        value += form[i] - lambda * variance[i];
      }
    }
    const FantasyTeam team(ids);
    if (!validate_team(team, pool, cs).ok()) continue;
    if (!best || objective_better(value, best_value) ||
        (objective_tied(value, best_value) && team.players() < *best)) {
      if (!best || !objective_tied(value, best_value)) best_value = value;
      best = team.players();
    }
  }
  if (!best) return std::nullopt;
  return FantasyTeam(*best);
}

Outcome ac5_optimizer_oracle() {
  Check c;
  Rng rng(505);
  int pools = 0;
  int comparisons = 0;
  constexpr char kRoleTag[] = {'B', 'W', 'A', 'K'};
  while (pools < 50) {
    std::vector<PlayerRecord> pool;
    for (int side = 0; side < 2; ++side) {
      for (std::size_t r = 0; r < kRoleCount; ++r) {
        const int n = (side == 0 ? 1 : 0) + static_cast<int>(rng.below(3));
        for (int k = 0; k < n; ++k) {
          const auto id = fmt::format("{}{}{}", side ? 'Y' : 'X', kRoleTag[r], k);
          pool.push_back({id, id, static_cast<PlayerRole>(r), side ? "Y" : "X"});
        }
      }
    }
    if (pool.size() < 11 || pool.size() > 16) continue;
    rng.shuffle(pool.begin(), pool.end());
    const bool integral = pools % 3 == 0;
    std::vector<double> form(pool.size()), variance(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      form[i] = integral ? static_cast<double>(rng.below(6)) : rng.uniform(0, 100);
      variance[i] = integral ? static_cast<double>(rng.below(4)) : rng.uniform(0, 500);
    }
    const ConstraintSet cs;
    for (double lambda : {0.0, 0.5, 2.0}) {
      const auto oracle = brute_force(pool, form, variance, lambda, cs);
      if (!oracle) {
        bool threw = false;
        try {
          mean_variance_select(pool, form, variance, lambda, cs);
        } catch (const InfeasibleError&) {
          threw = true;
        }
        c.expect(threw, fmt::format("pool {} infeasible but optimizer returned", pools));
      } else {
        c.expect(mean_variance_select(pool, form, variance, lambda, cs) == *oracle,
                 fmt::format("pool {} lambda {} differs", pools, lambda));
      }
      ++comparisons;
    }
    ++pools;
  }
  return c.done(fmt::format("{} pools, {} comparisons equal to exhaustive search", pools, comparisons));
}

Outcome ac6_normalization(const std::vector<MatchSummary>& summaries) {
  Check c;
  const std::vector<double> column = {23.944, 19.718, 18.310, 14.085, 11.268, 7.042, 1.408,
                                      1.408,  1.408,  1.408,  0.0,    0.0,    0.0,   0.0};
  const double lo = *std::min_element(column.begin(), column.end());
  const double hi = *std::max_element(column.begin(), column.end());
  const double top = normalize_value(hi, lo, hi, false);
  const double bottom = normalize_value(lo, lo, hi, false);
  c.expect(std::abs(top - 24.944 / 25.944) <= 1e-9, fmt::format("top {}", top));
  c.expect(std::abs(bottom - 1 / 25.944) <= 1e-9, fmt::format("bottom {}", bottom));
  // The quoted five-decimal figures are truncations of the exact fractions.
  c.expect(std::abs(top - 0.96145) < 1e-5 && std::abs(bottom - 0.03854) < 1e-5, "five-decimal endpoints");

  const auto matrix = normalize_metric_matrix(eight_metric_matrix(summaries, kAllStrategies));
  std::size_t cells = 0;
  for (const auto& row : matrix.normalized) {
    for (double v : row) {
      c.expect(v > 0 && v < 1, fmt::format("normalized cell {}", v));
      ++cells;
    }
  }
  return c.done(fmt::format("endpoints {:.5f}/{:.5f}; {} simulated cells inside (0,1)", top, bottom, cells));
}

Outcome ac7_softmax_allocation() {
  Check c;
  std::vector<double> x(15, 0.0);
  x[0] = 100;
  const auto w = softmax_reweight(x, 25);
  const double e4 = std::exp(4.0);
  c.expect(std::abs(w[0] - e4 / (e4 + 14)) <= 1e-12, fmt::format("w1 {}", w[0]));
  c.expect(std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1) <= 1e-12, "weights sum");

  std::mt19937_64 gen(707);
  std::uniform_real_distribution<double> value(0, 1500);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + gen() % 20;
    std::vector<double> xs(n);
    for (double& v : xs) v = std::floor(value(gen));
    const double tau = 1 + static_cast<double>(gen() % 100);
    const auto ws = softmax_reweight(xs, tau);
    c.expect(std::abs(std::accumulate(ws.begin(), ws.end(), 0.0) - 1) <= 1e-12, "softmax sum");
    std::vector<double> shifted = xs;
    const double shift = static_cast<double>(gen() % 10000);
    for (double& v : shifted) v += shift;
    const auto ws2 = softmax_reweight(shifted, tau);
    for (std::size_t i = 0; i < n; ++i) c.expect(std::abs(ws[i] - ws2[i]) <= 1e-12, "shift invariance");

    const int total = static_cast<int>(1 + gen() % 3000);
    const auto counts = allocate_agents(ws, total);
    c.expect(std::accumulate(counts.begin(), counts.end(), 0) == total,
             fmt::format("allocation sums to {} not {}", std::accumulate(counts.begin(), counts.end(), 0), total));
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(std::abs(counts[i] - ws[i] * total) < 1 + 1e-9, "share off by more than one");
    }
  }
  return c.done(fmt::format("w1 = {:.12f}; 1000 fuzzed vectors sum and allocate exactly", w[0]));
}

Outcome ac8_dynamics_structure() {
  Check c;
  const auto ds = fixture(10, 108);
  const auto inputs = SimulationInputs::from(ds);
  DynamicsConfig cfg;
  cfg.iterations = 10;
  cfg.repeats = 2;
  cfg.seed = 8;
  const auto structure = make_payoff_structure(ContestKind::Mega);
  const auto a = run_dynamic_tournament(ds.matches, inputs, cfg, structure);
  c.expect(a.history.size() == 11, fmt::format("{} records", a.history.size()));
  for (const auto& rec : a.history) {
    const int entering = std::accumulate(rec.counts.begin(), rec.counts.end(), 0);
    c.expect(entering == (rec.iteration == 0 ? 1400 : 1500), fmt::format("iteration {}: {}", rec.iteration, entering));
    c.expect(std::accumulate(rec.next_counts.begin(), rec.next_counts.end(), 0) == 1500, "next population");
    for (const auto& rep : rec.repeats) {
      for (std::size_t s = 0; s < kStrategyCount; ++s) {
        c.expect(rep.positive[s] >= 0 && rep.positive[s] <= rec.counts[s], "x exceeds count");
      }
    }
  }
  const auto b = run_dynamic_tournament(ds.matches, inputs, cfg, structure);
  bool identical = a.history.size() == b.history.size() && a.first_majority_iteration == b.first_majority_iteration;
  for (std::size_t i = 0; identical && i < a.history.size(); ++i) {
    const auto& ra = a.history[i];
    const auto& rb = b.history[i];
    identical = ra.counts == rb.counts && ra.weights == rb.weights && ra.next_counts == rb.next_counts &&
                ra.repeats.size() == rb.repeats.size();
    for (std::size_t r = 0; identical && r < ra.repeats.size(); ++r) {
      identical = ra.repeats[r].season == rb.repeats[r].season && ra.repeats[r].positive == rb.repeats[r].positive &&
                  ra.repeats[r].weights == rb.repeats[r].weights;
    }
  }
  c.expect(identical, "replay differs");
  const auto& last = a.history.back().counts;
  const auto leader = std::max_element(last.begin(), last.end()) - last.begin();
  return c.done(fmt::format("11 records, 1400 then 1500 agents, replay identical; final leader {} with {}",
                            strategy_name(kAllStrategies[static_cast<std::size_t>(leader)]), last[static_cast<std::size_t>(leader)]));
}

Outcome ac9_tie_break() {
  Check c;
  Rng rng(909);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(200);
    std::vector<int> entry(n);
    std::iota(entry.begin(), entry.end(), 1);
    rng.shuffle(entry.begin(), entry.end());
    const std::vector<double> points(n, 42.5);
    c.expect(rank_agents(points, entry) == entry, "equal points not ranked by entry order");
  }
  // A full contest on a match where nobody scores: every team ties at zero.
  auto ds = fixture(2, 109);
  for (auto& match : ds.matches) {
    for (auto& entry : match.roster) entry.stats = PlayerMatchStats{};
  }
  const auto inputs = SimulationInputs::from(ds);
  const auto result = run_contest(ds.matches[1], inputs, SeasonHistory(inputs.rules), make_roster(kAllStrategies, 100),
                                  make_payoff_structure(ContestKind::Mega), 9);
  for (const auto& a : result.agents) {
    c.expect(a.points == 0, "non-zero points");
    c.expect(a.rank == a.entry_order, fmt::format("agent {} rank {} entry {}", a.agent_id, a.rank, a.entry_order));
  }
  return c.done("100 constructed tie lists and a 1500-agent all-zero contest rank by entry order");
}

Outcome ac10_skill_signal() {
  Check c;
  std::vector<MatchSummary> all;
  const auto roster = make_roster(kAllStrategies, 100);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto ds = fixture(20, seed);
    const auto inputs = SimulationInputs::from(ds);
    const auto season = run_season(std::span<const MatchScorecard>(ds.matches), inputs, roster,
                                   make_payoff_structure(ContestKind::Mega), derive_seed(seed, {0xac10}));
    for (const auto& r : season) all.push_back(match_strategy_summary(r, kAllStrategies));
  }
  const auto m = eight_metric_matrix(all, kAllStrategies);
  const auto ma5 = strategy_index(StrategyId::MA5);
  const auto r1 = strategy_index(StrategyId::Random1);
  const double ma5_rank = m.raw_at(ma5, Metric::MeanAverageRank);
  const double r1_rank = m.raw_at(r1, Metric::MeanAverageRank);
  const double ma5_win = m.raw_at(ma5, Metric::WinPctBestRank);
  const double r1_win = m.raw_at(r1, Metric::WinPctBestRank);
  c.expect(ma5_rank < r1_rank, fmt::format("MA5 mean average rank {} not below Random1 {}", ma5_rank, r1_rank));
  c.expect(r1_win >= ma5_win, fmt::format("Random1 Win%Best {} below MA5 {}", r1_win, ma5_win));
  return c.done(fmt::format("{} matches: mean avg rank MA5 {:.2f} < Random1 {:.2f}; Win%Best Random1 {:.2f} >= MA5 {:.2f}",
                            all.size(), ma5_rank, r1_rank, r1_win, ma5_win));
}

Outcome ac11_mcdm() {
  Check c;
  const Matrix decision{{9, 9, 1}, {5, 6, 4}, {3, 2, 6}, {7, 4, 5}};
  const std::vector<Orientation> orient = {Orientation::Benefit, Orientation::Benefit, Orientation::Cost};
  const std::vector<double> weights = {0.4, 0.35, 0.25};
  const std::vector<std::string> labels = {"d", "a", "b", "c"};
  const auto t = topsis_rank(decision, orient, weights, labels);
  c.expect(t.order.front() == 0, "dominant alternative not first");
  c.expect(std::abs(t.closeness[0] - 1.0) < 1e-12, fmt::format("dominant closeness {}", t.closeness[0]));

  const auto ones = ahp_weights(Matrix(4, 4, 1.0));
  for (double v : ones.weights) c.expect(std::abs(v - 0.25) < 1e-12, fmt::format("all-ones weight {}", v));

  const std::vector<double> truth = {0.5, 0.25, 0.15, 0.1};
  Matrix consistent(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) consistent(i, j) = truth[i] / truth[j];
  }
  const auto round_trip = ahp_weights(consistent);
  for (std::size_t i = 0; i < 4; ++i) {
    c.expect(std::abs(round_trip.weights[i] - truth[i]) <= 1e-8, fmt::format("round trip {}", round_trip.weights[i]));
  }

  const Matrix with_constant{{3, 7, 1}, {3, 2, 5}, {3, 9, 4}};
  const auto entropy = shannon_entropy_weights(with_constant);
  c.expect(entropy[0] == 0.0, fmt::format("constant column weight {}", entropy[0]));
  return c.done(fmt::format("dominant first (closeness 1), uniform all-ones, round trip to 1e-8, constant column weight {}",
                            entropy[0]));
}

}  // namespace
}  // namespace fantasy

int main() {
  using namespace fantasy;
  std::vector<MatchSummary> season_summaries;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"payoff structures", ac1_payoff_structures},
      {"conservation", ac2_conservation},
      {"strategy trait law", ac3_trait_law},
      {"constraint law", [&] { return ac4_constraint_law(season_summaries); }},
      {"optimizer oracle", ac5_optimizer_oracle},
      {"normalization law", [&] { return ac6_normalization(season_summaries); }},
      {"softmax and allocation", ac7_softmax_allocation},
      {"dynamics structure", ac8_dynamics_structure},
      {"tie-break law", ac9_tie_break},
      {"skill signal", ac10_skill_signal},
      {"mcdm laws", ac11_mcdm},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = checks[i].second();
    } catch (const std::exception& e) {
      out = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("AC{} {} {} ({:.2f}s): {}\n", i + 1, out.pass ? "PASS" : "FAIL", checks[i].first, secs, out.detail);
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", checks.size() - static_cast<std::size_t>(failed), checks.size());
  return failed == 0 ? 0 : 1;
}
