#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fantasy/contest.hpp"
#include "fantasy/dynamics.hpp"
#include "fantasy/metrics.hpp"

namespace fantasy::report {

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

/// A comma-separated table with a header row. Cells never contain commas.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position by name; throws ParseError when absent.
  std::size_t column(std::string_view name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
/// Throws ParseError on ragged rows or an empty input.
CsvTable read_csv(std::istream& in, const std::string& source = "<stream>");

/// One JSON record per contest.
void write_contest_results(std::ostream& out, std::span<const ContestResult> contests);

CsvTable match_summary_table(std::span<const MatchSummary> summaries);
CsvTable metrics_table(const MetricMatrix& matrix);
/// Inverse of metrics_table.
MetricMatrix read_metrics_table(const CsvTable& table);
CsvTable average4_table(std::span<const RankedStrategy> ranking);
CsvTable player_payoff_table(std::span<const PlayerPayoffSummary> rows);
CsvTable strategy_payoff_table(std::span<const StrategyPayoffSummary> rows);

/// One JSON record per iteration.
void write_dynamics_history(std::ostream& out, std::span<const IterationRecord> history);
/// Inverse of write_dynamics_history.
std::vector<IterationRecord> read_dynamics_history(std::istream& in, const std::string& source = "<stream>");
/// One row per (iteration, strategy) for the given strategies.
CsvTable dynamics_series_table(std::span<const IterationRecord> history, std::span<const StrategyId> strategies);

void write_subsets_json(std::ostream& out, std::span<const SubsetReport> reports);
CsvTable subsets_table(std::span<const SubsetReport> reports);

}  // namespace fantasy::report
