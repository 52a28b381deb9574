#include "fantasy/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "fantasy/errors.hpp"

namespace fantasy {

namespace {

constexpr std::string_view kMetricNames[kMetricCount] = {
    "win_pct_best_rank",   "win_pct_average_rank", "mean_average_points", "median_average_points",
    "mean_average_rank",   "median_average_rank",  "mean_best_rank",      "median_best_rank"};

constexpr std::size_t col(Metric m) { return static_cast<std::size_t>(m); }

}  // namespace

std::string_view to_string(Metric metric) noexcept { return kMetricNames[col(metric)]; }

bool rank_oriented(Metric metric) noexcept {
  return metric == Metric::MeanAverageRank || metric == Metric::MedianAverageRank ||
         metric == Metric::MeanBestRank || metric == Metric::MedianBestRank;
}

MatchSummary match_strategy_summary(const ContestResult& result, std::span<const StrategyId> strategies,
                                    std::vector<std::string>* warnings) {
  MatchSummary summary;
  summary.match_id = result.match_id;
  std::array<StrategySummary, kStrategyCount> acc{};
  std::array<double, kStrategyCount> rank_sum{};
  std::array<double, kStrategyCount> point_sum{};
  for (const auto& a : result.agents) {
    const auto s = strategy_index(a.strategy);
    auto& st = acc[s];
    if (st.agents == 0 || a.rank < st.best_rank) st.best_rank = a.rank;
    ++st.agents;
    rank_sum[s] += a.rank;
    point_sum[s] += a.points;
    if (a.rank == 1) summary.winner = a.strategy;
  }
  for (StrategyId id : strategies) {
    const auto s = strategy_index(id);
    auto st = acc[s];
    if (st.agents == 0) {
      if (warnings) {
        warnings->push_back(fmt::format("match {}: strategy {} has no agents; excluded", result.match_id,
                                        strategy_name(id)));
      }
      continue;
    }
    st.strategy = id;
    st.average_rank = rank_sum[s] / st.agents;
    st.average_points = point_sum[s] / st.agents;
    summary.strategies.push_back(st);
  }
  return summary;
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw ParameterError("median of an empty sample");
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Quantiles summarize(std::vector<double> v) {
  if (v.empty()) throw ParameterError("summary of an empty sample");
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  const auto med = [](std::span<const double> s) {
    const auto m = s.size();
    return m % 2 ? s[m / 2] : 0.5 * (s[m / 2 - 1] + s[m / 2]);
  };
  Quantiles q;
  q.count = n;
  q.min = v.front();
  q.max = v.back();
  q.median = med(v);
  const std::size_t half = (n + 1) / 2;  // includes the median when n is odd
  q.q1 = med(std::span<const double>(v).first(half));
  q.q3 = med(std::span<const double>(v).last(half));
  double sum = 0;
  for (double x : v) sum += x;
  q.mean = sum / static_cast<double>(n);
  return q;
}

MetricMatrix eight_metric_matrix(std::span<const MatchSummary> matches, std::span<const StrategyId> strategies) {
  if (matches.empty()) throw ParameterError("eight_metric_matrix: no matches");
  const auto rows = strategies.size();
  std::vector<int> best_wins(rows, 0), average_wins(rows, 0);
  std::vector<std::vector<double>> avg_points(rows), avg_rank(rows), best_rank(rows);

  for (const auto& m : matches) {
    double lowest = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> holder;
    bool unique = false;
    for (std::size_t r = 0; r < rows; ++r) {
      const auto it = std::find_if(m.strategies.begin(), m.strategies.end(),
                                   [&](const StrategySummary& s) { return s.strategy == strategies[r]; });
      if (it == m.strategies.end()) continue;
      if (m.winner == strategies[r]) ++best_wins[r];
      avg_points[r].push_back(it->average_points);
      avg_rank[r].push_back(it->average_rank);
      best_rank[r].push_back(it->best_rank);
      if (it->average_rank < lowest) {
        lowest = it->average_rank;
        holder = r;
        unique = true;
      } else if (it->average_rank == lowest) {
        unique = false;
      }
    }
    if (holder && unique) ++average_wins[*holder];
  }

  MetricMatrix out;
  out.strategies.assign(strategies.begin(), strategies.end());
  out.matches = static_cast<int>(matches.size());
  const double m_count = static_cast<double>(matches.size());
  const auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const auto median = [](const std::vector<double>& v) { return v.empty() ? 0.0 : median_of(v); };
  out.raw.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    auto& row = out.raw[r];
    row[col(Metric::WinPctBestRank)] = 100.0 * best_wins[r] / m_count;
    row[col(Metric::WinPctAverageRank)] = 100.0 * average_wins[r] / m_count;
    row[col(Metric::MeanAveragePoints)] = mean(avg_points[r]);
    row[col(Metric::MedianAveragePoints)] = median(avg_points[r]);
    row[col(Metric::MeanAverageRank)] = mean(avg_rank[r]);
    row[col(Metric::MedianAverageRank)] = median(avg_rank[r]);
    row[col(Metric::MeanBestRank)] = mean(best_rank[r]);
    row[col(Metric::MedianBestRank)] = median(best_rank[r]);
  }
  return out;
}

double normalize_value(double x, double column_min, double column_max, bool flip) noexcept {
  const double v = (x - (column_min - 1.0)) / (column_max - column_min + 2.0);
  return flip ? 1.0 - v : v;
}

MetricMatrix normalize_metric_matrix(MetricMatrix m) {
  m.normalized.assign(m.raw.size(), {});
  for (std::size_t c = 0; c < kMetricCount; ++c) {
    if (m.raw.empty()) break;
    double lo = m.raw[0][c];
    double hi = lo;
    for (const auto& row : m.raw) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
    const bool flip = rank_oriented(static_cast<Metric>(c));
    for (std::size_t r = 0; r < m.raw.size(); ++r) m.normalized[r][c] = normalize_value(m.raw[r][c], lo, hi, flip);
  }
  return m;
}

std::vector<RankedStrategy> average4_ranking(const MetricMatrix& m) {
  if (m.normalized.size() != m.strategies.size()) throw ParameterError("average4_ranking: matrix not normalized");
  std::vector<RankedStrategy> out;
  for (std::size_t r = 0; r < m.strategies.size(); ++r) {
    const double score = (m.normalized_at(r, Metric::WinPctBestRank) + m.normalized_at(r, Metric::WinPctAverageRank) +
                          m.normalized_at(r, Metric::MeanAveragePoints) + m.normalized_at(r, Metric::MeanBestRank)) /
                         4.0;
    out.push_back({m.strategies[r], score});
  }
  std::sort(out.begin(), out.end(), [](const RankedStrategy& a, const RankedStrategy& b) {
    if (a.score != b.score) return a.score > b.score;
    return strategy_name(a.strategy) < strategy_name(b.strategy);
  });
  return out;
}

PayoffSummary payoff_summaries(std::span<const ContestResult> contests, std::span<const StrategyId> strategies,
                               PayoffAggregation aggregation) {
  PayoffSummary out;
  if (contests.empty()) return out;
  const auto n_agents = contests.front().agents.size();
  std::vector<double> totals(n_agents, 0.0);
  for (const auto& c : contests) {
    if (c.agents.size() != n_agents) throw ParameterError("payoff_summaries: roster changes between contests");
    for (const auto& a : c.agents) totals[static_cast<std::size_t>(a.agent_id)] += static_cast<double>(a.net_payoff);
  }
  const auto& roster = contests.front().agents;
  for (StrategyId s : strategies) {
    std::vector<double> mine;
    for (std::size_t i = 0; i < n_agents; ++i) {
      if (roster[i].strategy == s) mine.push_back(totals[i]);
    }
    if (mine.empty()) continue;
    out.player_specific.push_back({s, summarize(std::move(mine))});

    StrategyPayoffSummary ss{s, static_cast<int>(contests.size()), 0, 0, 0, 0};
    std::vector<double> means, medians, mins, maxes, pooled;
    for (const auto& c : contests) {
      std::vector<double> payoffs;
      for (const auto& a : c.agents) {
        if (a.strategy == s) payoffs.push_back(static_cast<double>(a.net_payoff));
      }
      pooled.insert(pooled.end(), payoffs.begin(), payoffs.end());
      const auto q = summarize(std::move(payoffs));
      means.push_back(q.mean);
      medians.push_back(q.median);
      mins.push_back(q.min);
      maxes.push_back(q.max);
    }
    if (aggregation == PayoffAggregation::Pooled) {
      const auto q = summarize(std::move(pooled));
      ss.mean = q.mean;
      ss.median = q.median;
      ss.min = q.min;
      ss.max = q.max;
    } else {
      ss.mean = summarize(means).mean;
      ss.median = median_of(medians);
      ss.min = *std::min_element(mins.begin(), mins.end());
      ss.max = *std::max_element(maxes.begin(), maxes.end());
    }
    out.strategy_specific.push_back(ss);
  }
  return out;
}

}  // namespace fantasy
