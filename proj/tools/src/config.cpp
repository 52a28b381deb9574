#include "fantasy/report/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "fantasy/errors.hpp"
#include "json.hpp"

namespace fantasy::report {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kSimulateStream = 0x53494d;
constexpr std::uint64_t kDynamicsStream = 0x44594e;
constexpr std::uint64_t kSubsetsStream = 0x535542;

/// Strict view over one config object: every key must be consumed.
class Section {
 public:
  Section(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(fmt::format("{}: expected an object", where()));
  }

  bool has(std::string_view key) const { return node_.contains(key); }

  const Json& raw(std::string_view key) {
    used_.insert(std::string(key));
    return node_.at(std::string(key));
  }

  Section section(std::string_view key) { return Section(raw(key), child(key)); }

  std::string child(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

  template <class T>
  void read(std::string_view key, T& out) {
    if (!has(key)) return;
    out = value<T>(raw(key), child(key));
  }

  template <class T>
  static T value(const Json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(fmt::format("{}: expected a boolean", where));
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned()) throw ConfigError(fmt::format("{}: expected an unsigned integer", where));
      return v.get<std::uint64_t>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(fmt::format("{}: expected an integer", where));
      const auto x = v.get<std::int64_t>();
      if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
        throw ConfigError(fmt::format("{}: out of range", where));
      }
      return static_cast<T>(x);
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(fmt::format("{}: expected a number", where));
      return v.get<T>();
    } else {
      if (!v.is_string()) throw ConfigError(fmt::format("{}: expected a string", where));
      return v.get<std::string>();
    }
  }

  void finish() const {
    for (const auto& [key, _] : node_.items()) {
      if (!used_.contains(key)) throw ConfigError(fmt::format("{}: unknown key", child(key)));
    }
  }

  std::string where() const { return path_.empty() ? "config" : path_; }

 private:
  const Json& node_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

StrategyId strategy_value(const Json& v, const std::string& where) {
  const auto name = Section::value<std::string>(v, where);
  const auto s = parse_strategy(name);
  if (!s) throw ConfigError(fmt::format("{}: unknown strategy '{}'", where, name));
  return *s;
}

std::vector<StrategyId> strategy_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(fmt::format("{}: expected a list of strategies", where));
  std::vector<StrategyId> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto s = strategy_value(v[i], fmt::format("{}[{}]", where, i));
    if (std::find(out.begin(), out.end(), s) != out.end()) {
      throw ConfigError(fmt::format("{}: strategy '{}' listed twice", where, strategy_name(s)));
    }
    out.push_back(s);
  }
  return out;
}

ContestKind contest_value(const Json& v, const std::string& where) {
  const auto name = Section::value<std::string>(v, where);
  const auto k = parse_contest_kind(name);
  if (!k) throw ConfigError(fmt::format("{}: unknown contest kind '{}'", where, name));
  return *k;
}

std::array<int, kRoleCount> role_counts(Section s, std::array<int, kRoleCount> out) {
  for (auto role : kAllRoles) s.read(to_string(role), out[role_index(role)]);
  s.finish();
  return out;
}

FixtureConfig parse_fixture(Section s, bool& seed_explicit) {
  FixtureConfig f;
  s.read("n_teams", f.n_teams);
  s.read("players_per_team", f.players_per_team);
  s.read("n_matches", f.n_matches);
  if (s.has("role_mix")) f.role_mix = role_counts(s.section("role_mix"), f.role_mix);
  if (s.has("profiles")) {
    const auto& list = s.raw("profiles");
    if (!list.is_array()) throw ConfigError(fmt::format("{}: expected a list", s.child("profiles")));
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section p(list[i], fmt::format("{}[{}]", s.child("profiles"), i));
      PerformanceProfile prof;
      p.read("mean_runs", prof.mean_runs);
      p.read("wicket_rate", prof.wicket_rate);
      p.finish();
      f.profiles.push_back(prof);
    }
  }
  s.read("hot_players_per_team", f.hot_players_per_team);
  s.read("hot_multiplier", f.hot_multiplier);
  s.read("impact_probability", f.impact_probability);
  seed_explicit = s.has("seed");
  s.read("seed", f.seed);
  s.finish();
  return f;
}

ScoringRules parse_scoring(Section s) {
  ScoringRules r;
  s.read("run", r.run);
  s.read("four_bonus", r.four_bonus);
  s.read("six_bonus", r.six_bonus);
  s.read("fifty_bonus", r.fifty_bonus);
  s.read("hundred_bonus", r.hundred_bonus);
  s.read("duck_penalty", r.duck_penalty);
  s.read("wicket", r.wicket);
  s.read("maiden", r.maiden);
  s.read("three_wicket_bonus", r.three_wicket_bonus);
  s.read("catch", r.catch_taken);
  s.read("stumping", r.stumping);
  s.read("runout", r.runout);
  s.finish();
  return r;
}

std::vector<TopsisCriterion> parse_criteria(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(fmt::format("{}: expected a list", where));
  std::vector<TopsisCriterion> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Section c(v[i], fmt::format("{}[{}]", where, i));
    std::string metric;
    std::string orientation = "benefit";
    c.read("metric", metric);
    c.read("orientation", orientation);
    c.finish();
    const auto m = parse_topsis_metric(metric);
    if (!m) throw ConfigError(fmt::format("{}: unknown metric '{}'", c.where(), metric));
    if (orientation != "benefit" && orientation != "cost") {
      throw ConfigError(fmt::format("{}: orientation must be 'benefit' or 'cost'", c.where()));
    }
    out.push_back({*m, orientation == "cost" ? Orientation::Cost : Orientation::Benefit});
  }
  return out;
}

Matrix parse_matrix(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(fmt::format("{}: expected a list of rows", where));
  const std::size_t n = v.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!v[r].is_array() || v[r].size() != n) throw ConfigError(fmt::format("{}: matrix must be square", where));
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Section::value<double>(v[r][c], fmt::format("{}[{}][{}]", where, r, c));
  }
  return m;
}

StrategyParams parse_params(Section s) {
  StrategyParams p;
  s.read("ma5_window", p.ma5_window);
  s.read("ma1_window", p.ma1_window);
  s.read("mean_var_window", p.mean_var_window);
  s.read("risk_aversion", p.risk_aversion);
  s.read("allrounder_min", p.allrounder_min);
  s.read("random2_batter_min", p.random2_batter_min);
  s.read("fav_team_majority", p.fav_team_majority);
  s.read("fallback_form", p.fallback_form);
  if (s.has("batting_criteria")) p.batting_criteria = parse_criteria(s.raw("batting_criteria"), s.child("batting_criteria"));
  if (s.has("bowling_criteria")) p.bowling_criteria = parse_criteria(s.raw("bowling_criteria"), s.child("bowling_criteria"));
  if (s.has("allrounder_criteria")) {
    p.allrounder_criteria = parse_criteria(s.raw("allrounder_criteria"), s.child("allrounder_criteria"));
  }
  if (s.has("ahp_batting")) p.ahp_batting = parse_matrix(s.raw("ahp_batting"), s.child("ahp_batting"));
  if (s.has("ahp_bowling")) p.ahp_bowling = parse_matrix(s.raw("ahp_bowling"), s.child("ahp_bowling"));
  if (s.has("ahp_allrounder")) p.ahp_allrounder = parse_matrix(s.raw("ahp_allrounder"), s.child("ahp_allrounder"));
  if (s.has("constraints")) {
    auto c = s.section("constraints");
    if (c.has("min_per_role")) {
      p.base_constraints.min_per_role = role_counts(c.section("min_per_role"), p.base_constraints.min_per_role);
    }
    c.read("min_per_real_team", p.base_constraints.min_per_real_team);
    c.read("team_size", p.base_constraints.team_size);
    c.finish();
  }
  s.finish();
  try {
    p.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(fmt::format("strategy_params: {}", e.what()));
  }
  return p;
}

}  // namespace

std::string_view to_string(PayoffAggregation aggregation) noexcept {
  return aggregation == PayoffAggregation::Pooled ? "pooled" : "match_level";
}

void ExperimentConfig::override_seed(std::uint64_t s) {
  seed = s;
  if (dataset.fixture && !dataset.fixture_seed_explicit) dataset.fixture->seed = s;
}

FixtureConfig ExperimentConfig::fixture_or_default() const {
  if (dataset.fixture) return *dataset.fixture;
  FixtureConfig f;
  f.seed = seed;
  return f;
}

void ExperimentConfig::validate() const {
  if (agents_per_strategy < 1) throw ConfigError("agents_per_strategy must be at least 1");
  if (strategies.empty()) throw ConfigError("strategies must not be empty");
  if (contests.empty()) throw ConfigError("contests must not be empty");
  if (subset_runs < 1) throw ConfigError("subsets.runs must be at least 1");
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (subsets[i].size() < 2) throw ConfigError(fmt::format("subsets.sets[{}]: a subset needs at least two strategies", i));
  }
  if (top_k < 1) throw ConfigError("dynamics.top_k must be at least 1");
  DynamicsConfig d;
  d.iterations = dynamics_iterations;
  d.repeats = dynamics_repeats;
  d.temperature = dynamics_temperature;
  d.agents_per_strategy = agents_per_strategy;
  d.validate();
  try {
    scoring.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(fmt::format("scoring: {}", e.what()));
  }
  if (dataset.scorecards.has_value() != dataset.careers.has_value()) {
    throw ConfigError("dataset: scorecards and careers must be given together");
  }
  for (const auto* path : {&dataset.scorecards, &dataset.careers}) {
    if (*path && !std::filesystem::exists(**path)) {
      throw ConfigError(fmt::format("dataset file not found: {}", (*path)->string()));
    }
  }
  if (dataset.fixture) dataset.fixture->validate();
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON ({})", e.what()));
  }
  Section s(root, "");
  ExperimentConfig cfg;
  int version = kSchemaVersion;
  s.read("schema_version", version);
  if (version != kSchemaVersion) throw ConfigError(fmt::format("unsupported schema_version {}", version));
  s.read("seed", cfg.seed);
  if (s.has("output_dir")) cfg.output_dir = base_dir / Section::value<std::string>(s.raw("output_dir"), "output_dir");

  if (s.has("dataset")) {
    auto d = s.section("dataset");
    if (d.has("fixture") && (d.has("scorecards") || d.has("careers"))) {
      throw ConfigError("dataset: give either fixture or scorecards/careers, not both");
    }
    if (d.has("scorecards")) cfg.dataset.scorecards = base_dir / Section::value<std::string>(d.raw("scorecards"), d.child("scorecards"));
    if (d.has("careers")) cfg.dataset.careers = base_dir / Section::value<std::string>(d.raw("careers"), d.child("careers"));
    if (d.has("fixture")) cfg.dataset.fixture = parse_fixture(d.section("fixture"), cfg.dataset.fixture_seed_explicit);
    d.finish();
  }
  if (!cfg.dataset.scorecards && !cfg.dataset.careers && !cfg.dataset.fixture) cfg.dataset.fixture = FixtureConfig{};
  if (cfg.dataset.fixture && !cfg.dataset.fixture_seed_explicit) cfg.dataset.fixture->seed = cfg.seed;

  if (s.has("scoring")) cfg.scoring = parse_scoring(s.section("scoring"));
  if (s.has("strategy_params")) cfg.params = parse_params(s.section("strategy_params"));
  if (s.has("contests")) {
    const auto& list = s.raw("contests");
    if (!list.is_array()) throw ConfigError("contests: expected a list");
    cfg.contests.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto k = contest_value(list[i], fmt::format("contests[{}]", i));
      if (std::find(cfg.contests.begin(), cfg.contests.end(), k) == cfg.contests.end()) cfg.contests.push_back(k);
    }
  }
  s.read("agents_per_strategy", cfg.agents_per_strategy);
  if (s.has("strategies")) cfg.strategies = strategy_list(s.raw("strategies"), "strategies");
  if (s.has("payoff_aggregation")) {
    const auto mode = Section::value<std::string>(s.raw("payoff_aggregation"), "payoff_aggregation");
    if (mode == "match_level") {
      cfg.payoff_aggregation = PayoffAggregation::MatchLevel;
    } else if (mode == "pooled") {
      cfg.payoff_aggregation = PayoffAggregation::Pooled;
    } else {
      throw ConfigError("payoff_aggregation must be 'match_level' or 'pooled'");
    }
  }
  if (s.has("subsets")) {
    auto sub = s.section("subsets");
    sub.read("runs", cfg.subset_runs);
    if (sub.has("sets")) {
      const auto& sets = sub.raw("sets");
      if (!sets.is_array()) throw ConfigError("subsets.sets: expected a list of lists");
      cfg.subsets.clear();
      for (std::size_t i = 0; i < sets.size(); ++i) {
        cfg.subsets.push_back(strategy_list(sets[i], fmt::format("subsets.sets[{}]", i)));
      }
    }
    sub.finish();
  }
  if (s.has("dynamics")) {
    auto d = s.section("dynamics");
    d.read("iterations", cfg.dynamics_iterations);
    d.read("repeats", cfg.dynamics_repeats);
    d.read("temperature", cfg.dynamics_temperature);
    if (d.has("contest")) cfg.dynamics_contest = contest_value(d.raw("contest"), "dynamics.contest");
    d.read("top_k", cfg.top_k);
    d.finish();
  }
  s.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file: {}", path.string()));
  std::stringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str(), path.parent_path());
}

LoadedDataset load_experiment_dataset(const ExperimentConfig& config) {
  if (config.dataset.scorecards) return load_dataset(*config.dataset.scorecards, *config.dataset.careers);
  LoadedDataset out;
  out.dataset = generate_fixture(config.fixture_or_default());
  return out;
}

std::uint64_t simulate_seed(const ExperimentConfig& config) { return derive_seed(config.seed, {kSimulateStream}); }
std::uint64_t dynamics_seed(const ExperimentConfig& config) { return derive_seed(config.seed, {kDynamicsStream}); }
std::uint64_t subsets_seed(const ExperimentConfig& config) { return derive_seed(config.seed, {kSubsetsStream}); }

}  // namespace fantasy::report
