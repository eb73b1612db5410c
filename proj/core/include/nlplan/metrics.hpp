// SPDX-License-Identifier: Apache-2.0
//
// Run records and the Acc / Acc0 / LF metrics.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlplan/engine.hpp"

namespace nlplan {

enum class Approach { kBasic, kCoT, kAct, kReAct };

std::string_view to_string(Approach a);
// Accepts "basic", "cot", "act", "react" in any case.
Approach approach_from_string(std::string_view s);
bool is_interactive(Approach a);
bool uses_thoughts(Approach a);
inline constexpr Approach kAllApproaches[] = {Approach::kBasic, Approach::kCoT, Approach::kAct, Approach::kReAct};

enum class TerminalStatus { kGoal, kLimit, kTranslationDead, kPlanEnd };

std::string_view to_string(TerminalStatus s);
TerminalStatus terminal_status_from_string(std::string_view s);

struct TrajectoryStep {
  std::optional<std::string> thought;
  // Empty for goal claims.
  std::string nl_action;
  // `(name arg...)` in PDDL object names, when translation succeeded.
  std::optional<std::string> pddl_action;
  bool executable = false;
  std::string observation;
  bool goal_claimed = false;
  std::string request_digest;
  std::string response_digest;

  friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::size_t step_limit = 24;
  TerminalStatus status = TerminalStatus::kLimit;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct RunResult {
  std::string problem;
  Approach approach = Approach::kBasic;
  std::size_t optimal_length = 0;
  // Goal reached by the last step (interactive runs: goal correctly claimed).
  bool correct = false;
  // One flag per step; translation failures and false goal claims count as
  // non-executable.
  ValidationReport report;
  Trajectory trajectory;

  // Correct with every step directly executable.
  bool correct_and_clean() const;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

void to_json(nlohmann::json& j, const TrajectoryStep& step);
void from_json(const nlohmann::json& j, TrajectoryStep& step);
void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);
void to_json(nlohmann::json& j, const RunResult& r);
void from_json(const nlohmann::json& j, RunResult& r);

double accuracy(std::span<const RunResult> results);
double acc_zero(std::span<const RunResult> results);
// Mean of executable_step_count / optimal_length over correct runs with a
// positive optimal length; nullopt when there are none.
std::optional<double> length_factor(std::span<const RunResult> results);

struct ReportRow {
  std::string domain;
  std::string approach;
  std::size_t runs = 0;
  std::size_t correct = 0;
  std::size_t clean = 0;
  double acc = 0.0;
  // Unset for baseline rows.
  std::optional<double> acc_zero;
  std::optional<double> lf;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  std::vector<ReportRow> rows;
  friend bool operator==(const Report&, const Report&) = default;
};

ReportRow summarize(std::string domain, Approach approach, std::span<const RunResult> results);

// Baseline rows ("random", "bfs") carry accuracy only.
ReportRow baseline_row(std::string domain, std::string name, std::size_t runs, std::size_t successes);

// Rows sorted by domain, then Basic, CoT, Act, ReAct, random, bfs.
void sort_rows(Report& report);

void to_json(nlohmann::json& j, const ReportRow& r);
void from_json(const nlohmann::json& j, ReportRow& r);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

// Two decimals; "–" for undefined values.
std::string format_metric(std::optional<double> v);
// Aligned plain-text table with a header row.
std::string render_table(const Report& report);
std::string render_csv(const Report& report);

}  // namespace nlplan
