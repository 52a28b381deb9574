#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fantasy/dynamics.hpp"
#include "fantasy/errors.hpp"
#include "fantasy/ingestion.hpp"

namespace fantasy {
namespace {

TEST(Softmax, OneLeaderAmongFifteen) {
  std::vector<double> x(15, 0.0);
  x[3] = 100;
  const auto w = softmax_reweight(x, 25);
  const double e4 = std::exp(4.0);
  EXPECT_NEAR(w[3], e4 / (e4 + 14), 1e-12);
  EXPECT_NEAR(w[0], 1 / (e4 + 14), 1e-12);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
}

TEST(Softmax, ShiftInvariantAndMonotone) {
  const std::vector<double> x = {3, 40, 12, 0, 12};
  std::vector<double> shifted = x;
  for (double& v : shifted) v += 1000;
  const auto a = softmax_reweight(x, 7);
  const auto b = softmax_reweight(shifted, 7);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-12);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[i] > x[j]) {
        EXPECT_GT(a[i], a[j]);
      }
      if (x[i] == x[j]) {
        EXPECT_EQ(a[i], a[j]);
      }
    }
  }
}

TEST(Softmax, TemperatureControlsSharpness) {
  const std::vector<double> x = {0, 10};
  EXPECT_GT(softmax_reweight(x, 1)[1], softmax_reweight(x, 100)[1]);
  EXPECT_NEAR(softmax_reweight(x, 1e9)[1], 0.5, 1e-6);
}

TEST(Softmax, Errors) {
  const std::vector<double> x = {1, 2};
  EXPECT_THROW(softmax_reweight(x, 0), ParameterError);
  EXPECT_THROW(softmax_reweight(x, -1), ParameterError);
  EXPECT_THROW(softmax_reweight({}, 1), ParameterError);
}

TEST(Allocate, ExactShares) {
  EXPECT_EQ(allocate_agents(std::vector<double>{0.5, 0.3, 0.2}, 1500), (std::vector<int>{750, 450, 300}));
  EXPECT_EQ(allocate_agents(std::vector<double>(15, 1.0 / 15), 1500), std::vector<int>(15, 100));
}

TEST(Allocate, LargestRemainderTiesToLowerIndex) {
  EXPECT_EQ(allocate_agents(std::vector<double>{0.305, 0.305, 0.39}, 100), (std::vector<int>{31, 30, 39}));
  EXPECT_EQ(allocate_agents(std::vector<double>{0.25, 0.25, 0.25, 0.25}, 3), (std::vector<int>{1, 1, 1, 0}));
  EXPECT_EQ(allocate_agents(std::vector<double>{0.1, 0.6, 0.3}, 7), (std::vector<int>{1, 4, 2}));
}

TEST(Allocate, Errors) {
  EXPECT_THROW(allocate_agents(std::vector<double>{0.5, 0.6}, 10), ParameterError);
  EXPECT_THROW(allocate_agents(std::vector<double>{1.5, -0.5}, 10), ParameterError);
  EXPECT_THROW(allocate_agents(std::vector<double>{1.0}, -1), ParameterError);
}

// Hamilton apportionment oracle in exact integer arithmetic on weights k_i / K.
std::vector<int> hamilton(const std::vector<long long>& k, int total) {
  const long long K = std::accumulate(k.begin(), k.end(), 0LL);
  std::vector<int> out(k.size());
  std::vector<long long> rem(k.size());
  int assigned = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    out[i] = static_cast<int>(k[i] * total / K);
    rem[i] = k[i] * total % K;
    assigned += out[i];
  }
  std::vector<std::size_t> order(k.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t j = 0; assigned < total; ++j, ++assigned) ++out[order[j]];
  return out;
}

TEST(Allocate, MatchesExactApportionment) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + gen() % 15;
    std::vector<long long> k(n);
    for (auto& v : k) v = static_cast<long long>(gen() % 1000);
    if (std::accumulate(k.begin(), k.end(), 0LL) == 0) k[0] = 1;
    const long long K = std::accumulate(k.begin(), k.end(), 0LL);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(k[i]) / static_cast<double>(K);
    const int total = 1 + static_cast<int>(gen() % 1500);
    const auto got = allocate_agents(w, total);
    EXPECT_EQ(std::accumulate(got.begin(), got.end(), 0), total);
    const auto want = hamilton(k, total);
    for (std::size_t i = 0; i < n; ++i) {
      // Remainders that differ below double precision may swap one unit.
      EXPECT_LE(std::abs(got[i] - want[i]), 1) << "trial " << trial;
      EXPECT_GE(got[i], static_cast<int>(k[i] * total / K));
      EXPECT_LE(got[i], static_cast<int>(k[i] * total / K) + 1);
    }
  }
}

TEST(Bootstrap, DeterministicAndInRange) {
  Rng a(5), b(5);
  const auto x = bootstrap_sample(20, 20, a);
  EXPECT_EQ(x, bootstrap_sample(20, 20, b));
  for (auto i : x) EXPECT_LT(i, 20u);
  Rng c(6);
  EXPECT_NE(x, bootstrap_sample(20, 20, c));
  Rng d(1);
  EXPECT_THROW(bootstrap_sample(0, 3, d), ParameterError);
}

class DynamicsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    FixtureConfig cfg;
    cfg.n_matches = 5;
    cfg.seed = 12;
    dataset_ = generate_fixture(cfg);
    inputs_ = SimulationInputs::from(dataset_);
    config_.iterations = 3;
    config_.repeats = 2;
    config_.agents_per_strategy = 4;
    config_.seed = 77;
  }

  DynamicsResult run() const {
    return run_dynamic_tournament(dataset_.matches, inputs_, config_, make_payoff_structure(ContestKind::FourX));
  }

  TournamentDataset dataset_;
  SimulationInputs inputs_;
  DynamicsConfig config_;
};

TEST_F(DynamicsTest, RecordStructure) {
  const auto result = run();
  ASSERT_EQ(result.history.size(), 4u);
  const auto& burn_in = result.history[0];
  EXPECT_EQ(burn_in.iteration, 0);
  EXPECT_EQ(burn_in.counts[strategy_index(StrategyId::PopularitySelection)], 0);
  EXPECT_EQ(std::accumulate(burn_in.counts.begin(), burn_in.counts.end(), 0), 14 * 4);
  for (std::size_t it = 0; it < result.history.size(); ++it) {
    const auto& rec = result.history[it];
    EXPECT_EQ(rec.iteration, static_cast<int>(it));
    EXPECT_EQ(std::accumulate(rec.next_counts.begin(), rec.next_counts.end(), 0), 15 * 4);
    EXPECT_NEAR(std::accumulate(rec.weights.begin(), rec.weights.end(), 0.0), 1.0, 1e-12);
    if (it > 0) {
      EXPECT_EQ(rec.counts, result.history[it - 1].next_counts);
    }
    ASSERT_EQ(rec.repeats.size(), 2u);
    for (const auto& rep : rec.repeats) {
      EXPECT_EQ(rep.season.size(), dataset_.matches.size());
      for (std::size_t s = 0; s < kStrategyCount; ++s) {
        EXPECT_GE(rep.positive[s], 0);
        EXPECT_LE(rep.positive[s], rec.counts[s]);
      }
      // Weights follow from the positive counts.
      std::vector<double> x(rep.positive.begin(), rep.positive.end());
      const auto w = softmax_reweight(x, config_.temperature);
      for (std::size_t s = 0; s < kStrategyCount; ++s) EXPECT_NEAR(rep.weights[s], w[s], 1e-15);
    }
  }
}

TEST_F(DynamicsTest, ReplayIsIdentical) {
  const auto a = run();
  const auto b = run();
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].counts, b.history[i].counts);
    EXPECT_EQ(a.history[i].weights, b.history[i].weights);
    for (std::size_t r = 0; r < a.history[i].repeats.size(); ++r) {
      EXPECT_EQ(a.history[i].repeats[r].season, b.history[i].repeats[r].season);
      EXPECT_EQ(a.history[i].repeats[r].positive, b.history[i].repeats[r].positive);
    }
  }
  EXPECT_EQ(a.first_majority_iteration, b.first_majority_iteration);
}

TEST_F(DynamicsTest, FirstMajorityMatchesHistory) {
  const auto result = run();
  std::optional<int> expected;
  for (const auto& rec : result.history) {
    const int n = std::accumulate(rec.counts.begin(), rec.counts.end(), 0);
    for (int c : rec.counts) {
      if (!expected && 2 * c > n) expected = rec.iteration;
    }
  }
  EXPECT_EQ(result.first_majority_iteration, expected);
}

TEST_F(DynamicsTest, TopStrategiesFollowFinalCounts) {
  const auto result = run();
  const auto top = top_strategies(result, 6);
  ASSERT_EQ(top.size(), 6u);
  const auto& last = result.history.back().counts;
  for (std::size_t i = 1; i < top.size(); ++i) {
    EXPECT_GE(last[strategy_index(top[i - 1])], last[strategy_index(top[i])]);
  }
}

TEST_F(DynamicsTest, ConfigErrors) {
  const auto fourx = make_payoff_structure(ContestKind::FourX);
  auto bad = config_;
  bad.iterations = 0;
  EXPECT_THROW(run_dynamic_tournament(dataset_.matches, inputs_, bad, fourx), ConfigError);
  bad = config_;
  bad.repeats = 0;
  EXPECT_THROW(run_dynamic_tournament(dataset_.matches, inputs_, bad, fourx), ConfigError);
  bad = config_;
  bad.temperature = 0;
  EXPECT_THROW(run_dynamic_tournament(dataset_.matches, inputs_, bad, fourx), ConfigError);
  bad = config_;
  bad.agents_per_strategy = 101;
  EXPECT_THROW(run_dynamic_tournament(dataset_.matches, inputs_, bad, fourx), ConfigError);
  EXPECT_THROW(run_dynamic_tournament({}, inputs_, config_, fourx), ConfigError);
}

}  // namespace
}  // namespace fantasy
