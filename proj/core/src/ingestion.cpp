#include "fantasy/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fantasy/errors.hpp"
#include "json.hpp"

namespace fantasy {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  return in;
}

std::string string_field(const Json& rec, std::string_view key, const std::string& where) {
  const auto it = rec.find(key);
  if (it == rec.end()) throw ParseError(where, fmt::format("missing key '{}'", key));
  if (!it->is_string()) throw ParseError(where, fmt::format("'{}' must be a string", key));
  auto value = std::string(trim(it->get<std::string>()));
  if (value.empty()) throw ParseError(where, fmt::format("'{}' is empty", key));
  return value;
}

int int_field(const Json& rec, std::string_view key, const std::string& where) {
  const auto it = rec.find(key);
  if (it == rec.end()) throw ParseError(where, fmt::format("missing key '{}'", key));
  if (!it->is_number_integer()) throw ParseError(where, fmt::format("'{}' must be an integer", key));
  const auto v = it->get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(where, fmt::format("'{}' out of range", key));
  }
  return static_cast<int>(v);
}

bool bool_field(const Json& rec, std::string_view key, const std::string& where) {
  const auto it = rec.find(key);
  if (it == rec.end()) throw ParseError(where, fmt::format("missing key '{}'", key));
  if (it->is_boolean()) return it->get<bool>();
  if (it->is_number_integer()) {
    const auto v = it->get<std::int64_t>();
    if (v == 0 || v == 1) return v == 1;
  }
  throw ParseError(where, fmt::format("'{}' must be a boolean", key));
}

int balls_field(const Json& rec, const std::string& where) {
  const auto it = rec.find("balls_bowled");
  if (it == rec.end()) throw ParseError(where, "missing key 'balls_bowled'");
  if (it->is_string()) {
    try {
      return overs_to_balls(trim(it->get<std::string>()));
    } catch (const ParameterError& e) {
      throw ParseError(where, e.what());
    }
  }
  return int_field(rec, "balls_bowled", where);
}

template <class T>
T parse_number(std::string_view text, std::string_view column, const std::string& where) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(where, fmt::format("column '{}': '{}' is not a number", column, text));
  }
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

ScorecardFile parse_scorecards(std::istream& in, const std::string& source) {
  ScorecardFile file;
  std::unordered_map<std::string, std::size_t> player_at;
  std::unordered_map<std::string, std::size_t> match_at;

  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    const auto where = fmt::format("{}:{}", source, line_no);
    Json rec;
    try {
      rec = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where, fmt::format("invalid JSON ({})", e.what()));
    }
    if (!rec.is_object()) throw ParseError(where, "record is not an object");
    for (const auto& [key, _] : rec.items()) {
      if (std::find(kScorecardKeys.begin(), kScorecardKeys.end(), key) == kScorecardKeys.end()) {
        throw ParseError(where, fmt::format("unknown key '{}'", key));
      }
    }

    PlayerRecord player;
    player.player_id = string_field(rec, "player_id", where);
    player.name = player.player_id;
    player.team_id = string_field(rec, "team_id", where);
    const auto role_label = string_field(rec, "role", where);
    const auto role = parse_role(role_label);
    if (!role) throw ParseError(where, fmt::format("unknown role '{}'", role_label));
    player.role = *role;

    if (auto it = player_at.find(player.player_id); it == player_at.end()) {
      player_at.emplace(player.player_id, file.players.size());
      file.players.push_back(player);
    } else if (const auto& known = file.players[it->second]; known.role != player.role || known.team_id != player.team_id) {
      throw DatasetIntegrityError(
          fmt::format("{}: player '{}' recorded as {}/{} and {}/{}", where, player.player_id, to_string(known.role),
                      known.team_id, to_string(player.role), player.team_id));
    }

    const auto match_id = string_field(rec, "match_id", where);
    const int match_index = int_field(rec, "match_index", where);
    const auto team_a = string_field(rec, "team_a", where);
    const auto team_b = string_field(rec, "team_b", where);
    auto [mit, inserted] = match_at.try_emplace(match_id, file.matches.size());
    if (inserted) {
      file.matches.push_back(MatchScorecard{match_id, match_index, team_a, team_b, {}});
    }
    auto& match = file.matches[mit->second];
    if (match.match_index != match_index || match.team_a != team_a || match.team_b != team_b) {
      throw DatasetIntegrityError(fmt::format("{}: match '{}' header differs from its earlier records", where, match_id));
    }

    PlayerMatchStats s;
    s.runs = int_field(rec, "runs", where);
    s.balls_faced = int_field(rec, "balls_faced", where);
    s.fours = int_field(rec, "fours", where);
    s.sixes = int_field(rec, "sixes", where);
    s.did_bat = bool_field(rec, "did_bat", where);
    s.wickets = int_field(rec, "wickets", where);
    s.balls_bowled = balls_field(rec, where);
    s.maidens = int_field(rec, "maidens", where);
    s.runs_conceded = int_field(rec, "runs_conceded", where);
    s.catches = int_field(rec, "catches", where);
    s.stumpings = int_field(rec, "stumpings", where);
    s.runouts = int_field(rec, "runouts", where);
    if (const auto broken = stats_violations(s); !broken.empty()) {
      throw DatasetIntegrityError(fmt::format("{}: player '{}': {}", where, player.player_id, broken.front()));
    }
    match.roster.push_back(RosterEntry{player.player_id, s});
  }
  if (in.bad()) throw ParseError(source, "read failure");

  std::stable_sort(file.matches.begin(), file.matches.end(),
                   [](const MatchScorecard& a, const MatchScorecard& b) { return a.match_index < b.match_index; });
  const PlayerDirectory directory(file.players);
  for (std::size_t i = 0; i < file.matches.size(); ++i) {
    if (i > 0 && file.matches[i].match_index == file.matches[i - 1].match_index) {
      throw DatasetIntegrityError(fmt::format("{}: matches '{}' and '{}' share match_index {}", source,
                                              file.matches[i - 1].match_id, file.matches[i].match_id,
                                              file.matches[i].match_index));
    }
    check_scorecard(file.matches[i], directory);
  }
  return file;
}

ScorecardFile parse_scorecards(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_scorecards(in, path.string());
}

std::vector<CareerStats> parse_career_stats(std::istream& in, const std::string& source) {
  std::vector<CareerStats> out;
  std::set<std::string, std::less<>> seen;
  std::string line;
  bool header_seen = false;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    const auto where = fmt::format("{}:{}", source, line_no);
    const auto cells = split_csv(line);
    if (!header_seen) {
      if (!std::equal(cells.begin(), cells.end(), kCareerColumns.begin(), kCareerColumns.end())) {
        throw ParseError(where, fmt::format("header must be '{}'", fmt::join(kCareerColumns, ",")));
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != kCareerColumns.size()) {
      throw ParseError(where, fmt::format("expected {} columns, found {}", kCareerColumns.size(), cells.size()));
    }
    auto count = [&](std::size_t col) {
      const int v = parse_number<int>(cells[col], kCareerColumns[col], where);
      if (v < 0) throw DatasetIntegrityError(fmt::format("{}: column '{}' is negative", where, kCareerColumns[col]));
      return v;
    };
    CareerStats c;
    c.player_id = std::string(cells[0]);
    if (c.player_id.empty()) throw ParseError(where, "empty player_id");
    if (!seen.insert(c.player_id).second) {
      throw DatasetIntegrityError(fmt::format("{}: duplicate career row for '{}'", where, c.player_id));
    }
    c.innings_batted = count(1);
    c.innings_bowled = count(2);
    c.career_runs = count(3);
    if (!cells[4].empty()) {
      c.batting_average = parse_number<double>(cells[4], kCareerColumns[4], where);
      if (!(c.batting_average >= 0)) {
        throw DatasetIntegrityError(fmt::format("{}: batting_average must be non-negative", where));
      }
    }
    if (c.innings_batted == 0) c.batting_average = 0;
    c.career_fours = count(5);
    c.career_sixes = count(6);
    c.career_wickets = count(7);
    c.career_maidens = count(8);
    c.career_catches = count(9);
    c.career_stumpings = count(10);
    out.push_back(std::move(c));
  }
  if (in.bad()) throw ParseError(source, "read failure");
  if (!header_seen) throw ParseError(source, "missing header");
  return out;
}

std::vector<CareerStats> parse_career_stats(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_career_stats(in, path.string());
}

CompletedCareers complete_careers(std::span<const PlayerRecord> players, std::span<const CareerStats> careers) {
  const auto table = index_careers(careers);
  CompletedCareers out;
  std::set<std::string, std::less<>> known;
  for (const auto& p : players) {
    known.insert(p.player_id);
    if (const auto it = table.find(p.player_id); it != table.end()) {
      out.careers.push_back(it->second);
    } else {
      CareerStats zero;
      zero.player_id = p.player_id;
      out.careers.push_back(zero);
      out.warnings.push_back(fmt::format("no career row for '{}'; using zero career", p.player_id));
    }
  }
  for (const auto& c : careers) {
    if (!known.contains(c.player_id)) {
      out.warnings.push_back(fmt::format("career row for unknown player '{}' ignored", c.player_id));
    }
  }
  return out;
}

LoadedDataset load_dataset(const std::filesystem::path& scorecards, const std::filesystem::path& careers) {
  auto file = parse_scorecards(scorecards);
  auto completed = complete_careers(file.players, parse_career_stats(careers));
  LoadedDataset out;
  out.dataset.players = std::move(file.players);
  out.dataset.matches = std::move(file.matches);
  out.dataset.careers = std::move(completed.careers);
  out.warnings = std::move(completed.warnings);
  check_dataset(out.dataset);
  return out;
}

void write_scorecards(std::ostream& out, const TournamentDataset& dataset) {
  const PlayerDirectory directory(dataset.players);
  for (const auto& m : dataset.matches) {
    for (const auto& e : m.roster) {
      const auto& p = directory.at(e.player_id);
      const auto& s = e.stats;
      Json rec;
      rec["match_id"] = m.match_id;
      rec["match_index"] = m.match_index;
      rec["team_a"] = m.team_a;
      rec["team_b"] = m.team_b;
      rec["player_id"] = p.player_id;
      rec["team_id"] = p.team_id;
      rec["role"] = to_string(p.role);
      rec["runs"] = s.runs;
      rec["balls_faced"] = s.balls_faced;
      rec["fours"] = s.fours;
      rec["sixes"] = s.sixes;
      rec["did_bat"] = s.did_bat;
      rec["wickets"] = s.wickets;
      rec["balls_bowled"] = s.balls_bowled;
      rec["maidens"] = s.maidens;
      rec["runs_conceded"] = s.runs_conceded;
      rec["catches"] = s.catches;
      rec["stumpings"] = s.stumpings;
      rec["runouts"] = s.runouts;
      out << rec.dump() << '\n';
    }
  }
}

void write_careers(std::ostream& out, std::span<const CareerStats> careers) {
  out << fmt::format("{}\n", fmt::join(kCareerColumns, ","));
  for (const auto& c : careers) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", c.player_id, c.innings_batted, c.innings_bowled,
                       c.career_runs, c.batting_average, c.career_fours, c.career_sixes, c.career_wickets,
                       c.career_maidens, c.career_catches, c.career_stumpings);
  }
}

}  // namespace fantasy
