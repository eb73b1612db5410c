// SPDX-License-Identifier: Apache-2.0
//
// The `nlplan` subcommands. Each returns a process exit code and writes
// human-readable progress to `out`.
#pragma once

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "nlplan/metrics.hpp"

namespace nlplan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInternalError = 2;
inline constexpr int kExitMissingFile = 3;

// Maps an exception escaping a command to an exit code.
int exit_code_for(const std::exception& ex);

// Parses each file (domains before the problems that use them, template files
// against the last domain) and reports structural invariants.
int cmd_check(const std::vector<std::filesystem::path>& paths, std::ostream& out);

// Writes <out>/templates.json, <out>/domain.txt and <out>/problems/<name>.txt.
// Missing templates are generated through the configured backend.
int cmd_convert(const ExperimentConfig& config, std::ostream& out);

// Optimal plans for every problem; `output` defaults to <out>/gold_plans.json.
int cmd_goldplans(const ExperimentConfig& config, const std::filesystem::path& output, std::ostream& out);

// Runs every (approach, problem) pair not already logged under
// <out>/logs/<domain>/<approach>/<problem>.jsonl and
// writes <out>/report.json, <out>/report.txt and <out>/report.csv.
int cmd_run(const ExperimentConfig& config, std::ostream& out);

// "bfs" or "random"; writes <out>/baseline-<domain>-<kind>.json.
int cmd_baseline(const ExperimentConfig& config, const std::string& kind, std::ostream& out);

// Rebuilds the report from the run logs and baseline files under `out_dir`.
int cmd_report(const std::filesystem::path& out_dir, std::ostream& out);

// Report assembled from run logs and baseline files.
Report collect_report(const std::filesystem::path& out_dir);

void write_report(const std::filesystem::path& out_dir, const Report& report);

}  // namespace nlplan::cli
