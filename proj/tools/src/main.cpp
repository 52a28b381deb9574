#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "fantasy/errors.hpp"
#include "fantasy/report/commands.hpp"
#include "json.hpp"

namespace {

using fantasy::report::CommandOutput;
using fantasy::report::ExperimentConfig;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Master seed; overrides the config");
  cmd->add_option("--out", opts.out, "Output directory; overrides the config");
}

ExperimentConfig resolve(const CommonOptions& opts) {
  ExperimentConfig config = opts.config.empty() ? fantasy::report::parse_experiment_config("{}", ".")
                                                : fantasy::report::load_experiment_config(opts.config);
  if (opts.seed) config.override_seed(*opts.seed);
  if (!opts.out.empty()) config.output_dir = opts.out;
  return config;
}

void report_error(std::string_view kind, std::string_view message, std::optional<std::string> locator = {}) {
  nlohmann::ordered_json rec;
  rec["error"] = kind;
  rec["message"] = message;
  if (locator) rec["locator"] = *locator;
  std::cerr << rec.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fantasy cricket strategy simulator"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* simulate = app.add_subcommand("simulate", "Run every match as a contest and write the metric suite");
  auto* dynamics = app.add_subcommand("dynamics", "Run the softmax-reweighted dynamic tournament");
  auto* subsets = app.add_subcommand("subsets", "Run the subset competitions");
  auto* fixture = app.add_subcommand("gen-fixture", "Write a synthetic tournament dataset");
  for (auto* cmd : {simulate, dynamics, subsets, fixture}) add_common(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto config = resolve(opts);
    CommandOutput result;
    if (simulate->parsed()) {
      result = fantasy::report::cmd_simulate(config);
    } else if (dynamics->parsed()) {
      result = fantasy::report::cmd_dynamics(config);
    } else if (subsets->parsed()) {
      result = fantasy::report::cmd_subsets(config);
    } else {
      result = fantasy::report::cmd_gen_fixture(config);
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    return 0;
  } catch (const fantasy::ParseError& e) {
    report_error(e.kind(), e.what(), e.locator());
  } catch (const fantasy::Error& e) {
    report_error(e.kind(), e.what());
  } catch (const std::exception& e) {
    report_error("internal", e.what());
  }
  return 1;
}
