#include "fantasy/report/writers.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fantasy/errors.hpp"
#include "fantasy/report/config.hpp"
#include "json.hpp"

namespace fantasy::report {

namespace {

using Json = nlohmann::ordered_json;

std::string version_cell() { return std::to_string(kSchemaVersion); }

template <class Array>
Json by_strategy(const Array& values) {
  Json obj = Json::object();
  for (auto s : kAllStrategies) obj[std::string(strategy_name(s))] = values[strategy_index(s)];
  return obj;
}

template <class Array>
void from_strategy_object(const Json& obj, Array& out, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object keyed by strategy");
  for (const auto& [name, value] : obj.items()) {
    const auto s = parse_strategy(name);
    if (!s) throw ParseError(where, fmt::format("unknown strategy '{}'", name));
    out[strategy_index(*s)] = value.template get<typename Array::value_type>();
  }
}

double parse_real(const std::string& text, const std::string& where) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError(where, fmt::format("'{}' is not a number", text));
  return v;
}

StrategyId parse_strategy_cell(const std::string& text, const std::string& where) {
  const auto s = parse_strategy(text);
  if (!s) throw ParseError(where, fmt::format("unknown strategy '{}'", text));
  return *s;
}

}  // namespace

std::string format_real(double value) { return fmt::format("{}", value); }

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ParseError("csv", fmt::format("missing column '{}'", name));
  return static_cast<std::size_t>(it - header.begin());
}

void write_csv(std::ostream& out, const CsvTable& table) {
  out << fmt::format("{}\n", fmt::join(table.header, ","));
  for (const auto& row : table.rows) out << fmt::format("{}\n", fmt::join(row, ","));
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (table.header.empty()) {
      table.header = std::move(cells);
    } else if (cells.size() != table.header.size()) {
      throw ParseError(fmt::format("{}:{}", source, line_no),
                       fmt::format("expected {} cells, found {}", table.header.size(), cells.size()));
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) throw ParseError(source, "empty table");
  return table;
}

void write_contest_results(std::ostream& out, std::span<const ContestResult> contests) {
  for (const auto& c : contests) {
    Json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["match_id"] = c.match_id;
    rec["structure"] = c.structure;
    rec["total_prizes"] = c.total_prizes();
    rec["total_net_payoff"] = c.total_net_payoff();
    Json agents = Json::array();
    for (const auto& a : c.agents) {
      Json row;
      row["agent_id"] = a.agent_id;
      row["strategy"] = strategy_name(a.strategy);
      row["entry_order"] = a.entry_order;
      row["team"] = a.team.players();
      row["points"] = a.points;
      row["rank"] = a.rank;
      row["prize"] = a.prize;
      row["net_payoff"] = a.net_payoff;
      agents.push_back(std::move(row));
    }
    rec["agents"] = std::move(agents);
    out << rec.dump() << '\n';
  }
}

CsvTable match_summary_table(std::span<const MatchSummary> summaries) {
  CsvTable t{{"schema_version", "match_id", "strategy", "agents", "average_rank", "average_points", "best_rank",
              "winner"},
             {}};
  for (const auto& m : summaries) {
    for (const auto& s : m.strategies) {
      t.rows.push_back({version_cell(), m.match_id, std::string(strategy_name(s.strategy)), std::to_string(s.agents),
                        format_real(s.average_rank), format_real(s.average_points), std::to_string(s.best_rank),
                        s.strategy == m.winner ? "1" : "0"});
    }
  }
  return t;
}

CsvTable metrics_table(const MetricMatrix& matrix) {
  CsvTable t;
  t.header = {"schema_version", "strategy", "matches"};
  for (std::size_t m = 0; m < kMetricCount; ++m) t.header.emplace_back(to_string(static_cast<Metric>(m)));
  const bool normalized = matrix.normalized.size() == matrix.raw.size();
  if (normalized) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      t.header.push_back(fmt::format("normalized_{}", to_string(static_cast<Metric>(m))));
    }
  }
  for (std::size_t r = 0; r < matrix.strategies.size(); ++r) {
    std::vector<std::string> row = {version_cell(), std::string(strategy_name(matrix.strategies[r])),
                                    std::to_string(matrix.matches)};
    for (double v : matrix.raw[r]) row.push_back(format_real(v));
    if (normalized) {
      for (double v : matrix.normalized[r]) row.push_back(format_real(v));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

MetricMatrix read_metrics_table(const CsvTable& table) {
  MetricMatrix m;
  const auto strategy_col = table.column("strategy");
  const auto matches_col = table.column("matches");
  const bool normalized =
      std::find(table.header.begin(), table.header.end(), "normalized_win_pct_best_rank") != table.header.end();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto where = fmt::format("metrics row {}", r + 1);
    m.strategies.push_back(parse_strategy_cell(row[strategy_col], where));
    m.matches = static_cast<int>(parse_real(row[matches_col], where));
    std::array<double, kMetricCount> raw{};
    std::array<double, kMetricCount> norm{};
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      const auto name = to_string(static_cast<Metric>(k));
      raw[k] = parse_real(row[table.column(name)], where);
      if (normalized) norm[k] = parse_real(row[table.column(fmt::format("normalized_{}", name))], where);
    }
    m.raw.push_back(raw);
    if (normalized) m.normalized.push_back(norm);
  }
  return m;
}

CsvTable average4_table(std::span<const RankedStrategy> ranking) {
  CsvTable t{{"schema_version", "rank", "strategy", "score"}, {}};
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    t.rows.push_back({version_cell(), std::to_string(i + 1), std::string(strategy_name(ranking[i].strategy)),
                      format_real(ranking[i].score)});
  }
  return t;
}

CsvTable player_payoff_table(std::span<const PlayerPayoffSummary> rows) {
  CsvTable t{{"schema_version", "strategy", "agents", "min", "q1", "median", "q3", "max", "mean"}, {}};
  for (const auto& r : rows) {
    const auto& q = r.totals;
    t.rows.push_back({version_cell(), std::string(strategy_name(r.strategy)), std::to_string(q.count),
                      format_real(q.min), format_real(q.q1), format_real(q.median), format_real(q.q3),
                      format_real(q.max), format_real(q.mean)});
  }
  return t;
}

CsvTable strategy_payoff_table(std::span<const StrategyPayoffSummary> rows) {
  CsvTable t{{"schema_version", "strategy", "matches", "mean", "median", "min", "max"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({version_cell(), std::string(strategy_name(r.strategy)), std::to_string(r.matches),
                      format_real(r.mean), format_real(r.median), format_real(r.min), format_real(r.max)});
  }
  return t;
}

void write_dynamics_history(std::ostream& out, std::span<const IterationRecord> history) {
  for (const auto& it : history) {
    Json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["iteration"] = it.iteration;
    rec["total_agents"] = std::accumulate(it.counts.begin(), it.counts.end(), 0);
    rec["counts"] = by_strategy(it.counts);
    Json repeats = Json::array();
    for (const auto& r : it.repeats) {
      Json row;
      row["season"] = r.season;
      row["positive"] = by_strategy(r.positive);
      row["weights"] = by_strategy(r.weights);
      repeats.push_back(std::move(row));
    }
    rec["repeats"] = std::move(repeats);
    rec["weights"] = by_strategy(it.weights);
    rec["next_counts"] = by_strategy(it.next_counts);
    out << rec.dump() << '\n';
  }
}

std::vector<IterationRecord> read_dynamics_history(std::istream& in, const std::string& source) {
  std::vector<IterationRecord> out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    const auto where = fmt::format("{}:{}", source, line_no);
    try {
      const auto rec = Json::parse(line);
      if (rec.at("schema_version").get<int>() != kSchemaVersion) throw ParseError(where, "unsupported schema_version");
      IterationRecord it;
      it.iteration = rec.at("iteration").get<int>();
      from_strategy_object(rec.at("counts"), it.counts, where);
      for (const auto& r : rec.at("repeats")) {
        RepeatRecord rr;
        rr.season = r.at("season").get<std::vector<std::string>>();
        from_strategy_object(r.at("positive"), rr.positive, where);
        from_strategy_object(r.at("weights"), rr.weights, where);
        it.repeats.push_back(std::move(rr));
      }
      from_strategy_object(rec.at("weights"), it.weights, where);
      from_strategy_object(rec.at("next_counts"), it.next_counts, where);
      out.push_back(std::move(it));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return out;
}

CsvTable dynamics_series_table(std::span<const IterationRecord> history, std::span<const StrategyId> strategies) {
  CsvTable t{{"schema_version", "iteration", "strategy", "count", "share"}, {}};
  for (const auto& it : history) {
    const int total = std::accumulate(it.counts.begin(), it.counts.end(), 0);
    for (auto s : strategies) {
      const int c = it.counts[strategy_index(s)];
      t.rows.push_back({version_cell(), std::to_string(it.iteration), std::string(strategy_name(s)),
                        std::to_string(c), format_real(total ? static_cast<double>(c) / total : 0.0)});
    }
  }
  return t;
}

void write_subsets_json(std::ostream& out, std::span<const SubsetReport> reports) {
  Json root;
  root["schema_version"] = kSchemaVersion;
  Json list = Json::array();
  for (const auto& r : reports) {
    Json rec;
    Json members = Json::array();
    Json best = Json::object();
    Json avg = Json::object();
    for (std::size_t i = 0; i < r.members.size(); ++i) {
      const std::string name(strategy_name(r.members[i]));
      members.push_back(name);
      best[name] = r.win_pct_best_rank[i];
      avg[name] = r.win_pct_average_rank[i];
    }
    rec["members"] = std::move(members);
    rec["runs"] = r.runs;
    rec["matches_per_run"] = r.matches_per_run;
    rec["win_pct_best_rank"] = std::move(best);
    rec["win_pct_average_rank"] = std::move(avg);
    Json pairs = Json::array();
    for (const auto& [a, b] : r.uniformly_better) pairs.push_back({strategy_name(a), strategy_name(b)});
    rec["uniformly_better"] = std::move(pairs);
    rec["dominant"] = r.dominant ? Json(strategy_name(*r.dominant)) : Json(nullptr);
    list.push_back(std::move(rec));
  }
  root["subsets"] = std::move(list);
  out << root.dump(2) << '\n';
}

CsvTable subsets_table(std::span<const SubsetReport> reports) {
  CsvTable t{{"schema_version", "subset", "strategy", "win_pct_best_rank", "win_pct_average_rank", "dominant"}, {}};
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    for (std::size_t i = 0; i < r.members.size(); ++i) {
      t.rows.push_back({version_cell(), std::to_string(k + 1), std::string(strategy_name(r.members[i])),
                        format_real(r.win_pct_best_rank[i]), format_real(r.win_pct_average_rank[i]),
                        r.dominant == r.members[i] ? "1" : "0"});
    }
  }
  return t;
}

}  // namespace fantasy::report
