#include "fantasy/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "fantasy/errors.hpp"

namespace fantasy {

namespace {

constexpr std::uint64_t kBootstrapStream = 0x626f6f7473747270ULL;
constexpr std::uint64_t kSeasonStream = 0x736561736f6e2121ULL;

}  // namespace

std::vector<std::size_t> bootstrap_sample(std::size_t match_count, std::size_t n, Rng& rng) {
  if (match_count == 0) throw ParameterError("bootstrap_sample: no matches to draw from");
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = static_cast<std::size_t>(rng.below(match_count));
  return out;
}

std::vector<double> softmax_reweight(std::span<const double> x, double temperature) {
  if (!(temperature > 0)) throw ParameterError("softmax_reweight: temperature must be positive");
  if (x.empty()) throw ParameterError("softmax_reweight: empty input");
  const double peak = *std::max_element(x.begin(), x.end());
  std::vector<double> w(x.size());
  double total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w[i] = std::exp((x[i] - peak) / temperature);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

std::vector<int> allocate_agents(std::span<const double> weights, int total) {
  if (total < 0) throw ParameterError("allocate_agents: negative total");
  double sum = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw ParameterError("allocate_agents: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError(fmt::format("allocate_agents: weights sum to {}", sum));

  std::vector<int> counts(weights.size());
  std::vector<double> remainder(weights.size());
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double share = weights[i] * total;
    // Snap products that land a rounding error below an integer.
    if (const double r = std::round(share); std::abs(share - r) < 1e-9) share = r;
    counts[i] = static_cast<int>(std::floor(share));
    remainder[i] = share - counts[i];
    assigned += counts[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  // Rounding in the floor step can leave the shortfall outside [0, n).
  for (std::size_t k = 0; assigned < total; k = (k + 1) % order.size(), ++assigned) ++counts[order[k]];
  for (std::size_t k = order.size(); assigned > total; --assigned) {
    k = (k == 0 ? order.size() : k) - 1;
    if (counts[order[k]] > 0) {
      --counts[order[k]];
    } else {
      ++assigned;
    }
  }
  return counts;
}

void DynamicsConfig::validate() const {
  if (iterations < 1) throw ConfigError("dynamics: iterations must be at least 1");
  if (repeats < 1) throw ConfigError("dynamics: repeats must be at least 1");
  if (!(temperature > 0)) throw ConfigError("dynamics: temperature must be positive");
  if (total_agents() < static_cast<int>(kStrategyCount) || agents_per_strategy < 1) {
    throw ConfigError(fmt::format("dynamics: {} agents cannot cover {} strategies", total_agents(), kStrategyCount));
  }
}

RepeatRecord run_dynamics_repeat(std::span<const MatchScorecard> matches, const SimulationInputs& inputs,
                                 const StrategyCounts& counts, const PayoffStructure& structure,
                                 double temperature, std::uint64_t repeat_seed) {
  Rng draw(derive_seed(repeat_seed, {kBootstrapStream}));
  const auto picks = bootstrap_sample(matches.size(), matches.size(), draw);
  const Roster roster = make_roster(counts);
  const auto season_seed = derive_seed(repeat_seed, {kSeasonStream});

  RepeatRecord record;
  std::vector<Money> totals(roster.size(), 0);
  SeasonHistory history(inputs.rules);
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const auto& match = matches[picks[k]];
    record.season.push_back(match.match_id);
    const auto contest = run_contest(match, inputs, history, roster, structure,
                                     derive_seed(season_seed, {static_cast<std::uint64_t>(k)}));
    for (const auto& a : contest.agents) totals[static_cast<std::size_t>(a.agent_id)] += a.net_payoff;
    history.append(match, inputs.players);
  }
  for (std::size_t i = 0; i < roster.size(); ++i) {
    if (totals[i] > 0) ++record.positive[strategy_index(roster[i])];
  }
  std::vector<double> x(record.positive.begin(), record.positive.end());
  const auto w = softmax_reweight(x, temperature);
  std::copy(w.begin(), w.end(), record.weights.begin());
  return record;
}

DynamicsResult run_dynamic_tournament(std::span<const MatchScorecard> matches, const SimulationInputs& inputs,
                                      const DynamicsConfig& config, const PayoffStructure& structure) {
  config.validate();
  if (matches.empty()) throw ConfigError("dynamics: dataset has no matches");
  structure.validate();
  if (config.total_agents() > structure.capacity()) {
    throw ConfigError(fmt::format("dynamics: {} agents exceed {} capacity {}", config.total_agents(), structure.name,
                                  structure.capacity()));
  }

  DynamicsResult result;
  StrategyCounts counts{};
  counts.fill(config.agents_per_strategy);
  counts[strategy_index(StrategyId::PopularitySelection)] = 0;

  for (int it = 0; it <= config.iterations; ++it) {
    IterationRecord rec;
    rec.iteration = it;
    rec.counts = counts;
    const int entering = std::accumulate(counts.begin(), counts.end(), 0);
    if (!result.first_majority_iteration &&
        std::any_of(counts.begin(), counts.end(), [&](int c) { return 2 * c > entering; })) {
      result.first_majority_iteration = it;
    }
    StrategyWeights mean{};
    for (int r = 0; r < config.repeats; ++r) {
      const auto seed = derive_seed(config.seed, {static_cast<std::uint64_t>(it), static_cast<std::uint64_t>(r)});
      rec.repeats.push_back(run_dynamics_repeat(matches, inputs, counts, structure, config.temperature, seed));
      for (std::size_t s = 0; s < kStrategyCount; ++s) mean[s] += rec.repeats.back().weights[s];
    }
    double total = 0;
    for (double& w : mean) {
      w /= config.repeats;
      total += w;
    }
    for (double& w : mean) w /= total;
    rec.weights = mean;
    const auto next = allocate_agents(mean, config.total_agents());
    std::copy(next.begin(), next.end(), rec.next_counts.begin());
    counts = rec.next_counts;
    result.history.push_back(std::move(rec));
  }
  return result;
}

std::vector<StrategyId> top_strategies(const DynamicsResult& result, std::size_t k) {
  if (result.history.empty()) return {};
  const auto& last = result.history.back().counts;
  std::vector<StrategyId> order(kAllStrategies.begin(), kAllStrategies.end());
  std::stable_sort(order.begin(), order.end(), [&](StrategyId a, StrategyId b) {
    return last[strategy_index(a)] > last[strategy_index(b)];
  });
  order.resize(std::min(k, order.size()));
  return order;
}

}  // namespace fantasy
