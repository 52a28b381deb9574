#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "fantasy/metrics.hpp"

namespace fantasy {

namespace {

constexpr std::uint64_t kSubsetStream = 0x7375627365747321ULL;

}  // namespace

std::vector<std::vector<StrategyId>> default_subsets() {
  using S = StrategyId;
  return {
      {S::Random1, S::Random2, S::FavTeam},
      {S::CareerAverages, S::AllrounderSelectAll, S::TournamentStats},
      {S::MA1, S::MA5, S::MeanVarOptimization, S::AllrounderPref},
      {S::TopsisSynthesis, S::TopsisShannon, S::TopsisAHP, S::CareerPoints},
  };
}

void rank_subset(SubsetReport& report) {
  report.uniformly_better.clear();
  report.dominant.reset();
  const auto n = report.members.size();
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t beaten = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      if (report.win_pct_best_rank[a] > report.win_pct_best_rank[b] &&
          report.win_pct_average_rank[a] > report.win_pct_average_rank[b]) {
        report.uniformly_better.emplace_back(report.members[a], report.members[b]);
        ++beaten;
      }
    }
    if (n > 1 && beaten == n - 1) report.dominant = report.members[a];
  }
}

std::vector<SubsetReport> subset_competition(std::span<const MatchScorecard> matches,
                                             const SimulationInputs& inputs, const SubsetCompetitionConfig& config) {
  if (config.runs < 1) throw ConfigError("subset competition needs at least one run");
  if (config.agents_per_strategy < 1) throw ConfigError("agents_per_strategy must be at least 1");
  if (matches.empty()) throw ConfigError("subset competition needs at least one match");
  for (const auto& subset : config.subsets) {
    if (subset.size() < 2) throw ConfigError(fmt::format("subset of size {} cannot compete", subset.size()));
  }

  std::vector<SubsetReport> reports;
  for (std::size_t si = 0; si < config.subsets.size(); ++si) {
    const auto& members = config.subsets[si];
    const Roster roster = make_roster(members, config.agents_per_strategy);
    // Payoffs play no part here; a zero-prize table sized to the roster.
    const PayoffStructure ranking{"ranking", 0, {{1, static_cast<int>(roster.size()), 0}}};

    std::vector<MatchSummary> summaries;
    for (int run = 0; run < config.runs; ++run) {
      const auto seed = derive_seed(config.seed, {kSubsetStream, si, static_cast<std::uint64_t>(run)});
      for (const auto& contest : run_season(matches, inputs, roster, ranking, seed)) {
        summaries.push_back(match_strategy_summary(contest, members));
      }
    }
    const auto matrix = eight_metric_matrix(summaries, members);
    SubsetReport report;
    report.members = members;
    report.runs = config.runs;
    report.matches_per_run = static_cast<int>(matches.size());
    for (std::size_t r = 0; r < members.size(); ++r) {
      report.win_pct_best_rank.push_back(matrix.raw_at(r, Metric::WinPctBestRank));
      report.win_pct_average_rank.push_back(matrix.raw_at(r, Metric::WinPctAverageRank));
    }
    rank_subset(report);
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace fantasy
