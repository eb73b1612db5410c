// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using nlplan::cli::ExperimentConfig;

// Flags shared by the experiment commands; values land in `kv` and are
// applied over the config file.
void add_experiment_options(CLI::App* cmd, std::string& config_file, std::map<std::string, std::string>& kv) {
  cmd->add_option("-c,--config", config_file, "Experiment config file (key = value lines)");
  const std::vector<std::pair<std::string, std::string>> options = {
      {"--domain", "PDDL domain file"},
      {"--problems", "Glob of PDDL problem files"},
      {"--templates", "Template JSON file"},
      {"--gold-plans", "Gold plan JSON file"},
      {"--thoughts", "Example thoughts JSON file"},
      {"--thought-seed", "Directory of the domain with manual example thoughts"},
      {"--approaches", "Comma-separated list of basic, cot, act, react"},
      {"--backend", "mock, replay or remote"},
      {"--recording", "Recording served by the replay backend"},
      {"--mock-script", "Scripted responses for the mock backend"},
      {"--cache", "Persistent response cache (JSONL)"},
      {"--record", "Add every exchange to this recording file"},
      {"--seed", "Random seed"},
      {"--step-limit", "Step limit per run"},
      {"--time-limit", "Search time limit in seconds"},
      {"--runs", "Runs per problem for the random baseline"},
      {"--jobs", "Worker threads (0: one per core)"},
      {"--out", "Output directory"},
  };
  for (const auto& [flag, help] : options) {
    std::string key = flag.substr(2);
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    cmd->add_option_function<std::string>(
        flag, [&kv, key](const std::string& v) { kv[key] = v; }, help);
  }
}

ExperimentConfig make_config(const std::string& config_file, const std::map<std::string, std::string>& kv) {
  ExperimentConfig c = config_file.empty() ? ExperimentConfig{} : nlplan::cli::load_config(config_file);
  nlplan::cli::apply_values(c, kv);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural-language planning benchmarks from PDDL tasks"};
  app.require_subcommand(1);

  std::string config_file;
  std::map<std::string, std::string> kv;

  std::vector<std::string> check_paths;
  auto* check = app.add_subcommand("check", "Parse PDDL and template files and report diagnostics");
  check->add_option("paths", check_paths, "Domain files, then their problem and template files")->required();

  auto* convert = app.add_subcommand("convert", "Generate templates and natural-language encodings");
  add_experiment_options(convert, config_file, kv);

  std::string gold_output;
  auto* goldplans = app.add_subcommand("goldplans", "Compute optimal plans with breadth-first search");
  add_experiment_options(goldplans, config_file, kv);
  goldplans->add_option("-o,--output", gold_output, "Gold plan file (default <out>/gold_plans.json)");

  auto* run = app.add_subcommand("run", "Run the planning approaches and write logs and a report");
  add_experiment_options(run, config_file, kv);

  std::string baseline_kind;
  auto* baseline = app.add_subcommand("baseline", "Run the bfs or random baseline");
  baseline->add_option("kind", baseline_kind, "bfs or random")->required()->check(CLI::IsMember({"bfs", "random"}));
  add_experiment_options(baseline, config_file, kv);

  std::string report_dir = "out";
  auto* report = app.add_subcommand("report", "Rebuild the report from logs and baseline files");
  report->add_option("--out", report_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nlplan::cli::kExitUserError;
  }

  try {
    if (*check) return nlplan::cli::cmd_check({check_paths.begin(), check_paths.end()}, std::cout);
    if (*report) return nlplan::cli::cmd_report(report_dir, std::cout);
    const ExperimentConfig c = make_config(config_file, kv);
    if (*convert) return nlplan::cli::cmd_convert(c, std::cout);
    if (*goldplans) return nlplan::cli::cmd_goldplans(c, gold_output, std::cout);
    if (*run) return nlplan::cli::cmd_run(c, std::cout);
    if (*baseline) return nlplan::cli::cmd_baseline(c, baseline_kind, std::cout);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return nlplan::cli::exit_code_for(ex);
  }
  return nlplan::cli::kExitInternalError;
}
