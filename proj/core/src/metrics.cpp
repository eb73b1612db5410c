// SPDX-License-Identifier: Apache-2.0
#include "nlplan/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlplan/error.hpp"

namespace nlplan {

using nlohmann::json;

std::string_view to_string(Approach a) {
  switch (a) {
    case Approach::kBasic:
      return "basic";
    case Approach::kCoT:
      return "cot";
    case Approach::kAct:
      return "act";
    case Approach::kReAct:
      return "react";
  }
  return "basic";
}

Approach approach_from_string(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Approach a : kAllApproaches) {
    if (to_string(a) == lower) return a;
  }
  throw ValidationError("unknown approach '" + std::string(s) + "'");
}

bool is_interactive(Approach a) { return a == Approach::kAct || a == Approach::kReAct; }
bool uses_thoughts(Approach a) { return a == Approach::kCoT || a == Approach::kReAct; }

std::string_view to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::kGoal:
      return "goal";
    case TerminalStatus::kLimit:
      return "limit";
    case TerminalStatus::kTranslationDead:
      return "translation-dead";
    case TerminalStatus::kPlanEnd:
      return "plan-end";
  }
  return "limit";
}

TerminalStatus terminal_status_from_string(std::string_view s) {
  for (auto st : {TerminalStatus::kGoal, TerminalStatus::kLimit, TerminalStatus::kTranslationDead,
                  TerminalStatus::kPlanEnd}) {
    if (to_string(st) == s) return st;
  }
  throw ValidationError("unknown terminal status '" + std::string(s) + "'");
}

bool RunResult::correct_and_clean() const {
  return correct && std::all_of(report.step_executable.begin(), report.step_executable.end(),
                                [](bool b) { return b; });
}

void to_json(json& j, const TrajectoryStep& s) {
  j = json{{"thought", s.thought ? json(*s.thought) : json(nullptr)},
           {"nl_action", s.nl_action},
           {"pddl_action", s.pddl_action ? json(*s.pddl_action) : json(nullptr)},
           {"executable", s.executable},
           {"observation", s.observation},
           {"goal_claimed", s.goal_claimed},
           {"request_digest", s.request_digest},
           {"response_digest", s.response_digest}};
}

void from_json(const json& j, TrajectoryStep& s) {
  s = TrajectoryStep{};
  if (j.contains("thought") && !j["thought"].is_null()) s.thought = j["thought"].get<std::string>();
  s.nl_action = j.value("nl_action", std::string{});
  if (j.contains("pddl_action") && !j["pddl_action"].is_null()) s.pddl_action = j["pddl_action"].get<std::string>();
  s.executable = j.value("executable", false);
  s.observation = j.value("observation", std::string{});
  s.goal_claimed = j.value("goal_claimed", false);
  s.request_digest = j.value("request_digest", std::string{});
  s.response_digest = j.value("response_digest", std::string{});
}

void to_json(json& j, const Trajectory& t) {
  j = json{{"steps", t.steps}, {"step_limit", t.step_limit}, {"status", to_string(t.status)}};
}

void from_json(const json& j, Trajectory& t) {
  t = Trajectory{};
  t.steps = j.at("steps").get<std::vector<TrajectoryStep>>();
  t.step_limit = j.value("step_limit", std::size_t{24});
  t.status = terminal_status_from_string(j.at("status").get<std::string>());
}

void to_json(json& j, const RunResult& r) {
  j = json{{"problem", r.problem},     {"approach", to_string(r.approach)}, {"optimal_length", r.optimal_length},
           {"correct", r.correct},     {"report", r.report},                {"trajectory", r.trajectory}};
}

void from_json(const json& j, RunResult& r) {
  r = RunResult{};
  r.problem = j.at("problem").get<std::string>();
  r.approach = approach_from_string(j.at("approach").get<std::string>());
  r.optimal_length = j.at("optimal_length").get<std::size_t>();
  r.correct = j.at("correct").get<bool>();
  r.report = j.at("report").get<ValidationReport>();
  r.trajectory = j.at("trajectory").get<Trajectory>();
}

double accuracy(std::span<const RunResult> results) {
  if (results.empty()) return 0.0;
  auto n = std::count_if(results.begin(), results.end(), [](const RunResult& r) { return r.correct; });
  return static_cast<double>(n) / static_cast<double>(results.size());
}

double acc_zero(std::span<const RunResult> results) {
  if (results.empty()) return 0.0;
  auto n = std::count_if(results.begin(), results.end(), [](const RunResult& r) { return r.correct_and_clean(); });
  return static_cast<double>(n) / static_cast<double>(results.size());
}

std::optional<double> length_factor(std::span<const RunResult> results) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : results) {
    if (!r.correct || r.optimal_length == 0) continue;
    sum += static_cast<double>(r.report.executable_step_count) / static_cast<double>(r.optimal_length);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

ReportRow summarize(std::string domain, Approach approach, std::span<const RunResult> results) {
  ReportRow row;
  row.domain = std::move(domain);
  row.approach = std::string(to_string(approach));
  row.runs = results.size();
  for (const auto& r : results) {
    if (r.correct) ++row.correct;
    if (r.correct_and_clean()) ++row.clean;
  }
  row.acc = accuracy(results);
  row.acc_zero = acc_zero(results);
  row.lf = length_factor(results);
  return row;
}

ReportRow baseline_row(std::string domain, std::string name, std::size_t runs, std::size_t successes) {
  ReportRow row;
  row.domain = std::move(domain);
  row.approach = std::move(name);
  row.runs = runs;
  row.correct = successes;
  row.acc = runs == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(runs);
  return row;
}

namespace {

int approach_rank(const std::string& name) {
  static const char* const kOrder[] = {"basic", "cot", "act", "react", "random", "bfs"};
  for (int i = 0; i < 6; ++i) {
    if (name == kOrder[i]) return i;
  }
  return 6;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

void sort_rows(Report& report) {
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.domain != b.domain) return a.domain < b.domain;
    int ra = approach_rank(a.approach);
    int rb = approach_rank(b.approach);
    if (ra != rb) return ra < rb;
    return a.approach < b.approach;
  });
}

void to_json(json& j, const ReportRow& r) {
  j = json{{"domain", r.domain},   {"approach", r.approach}, {"runs", r.runs},
           {"correct", r.correct}, {"clean", r.clean},       {"acc", r.acc},
           {"acc_zero", optional_number(r.acc_zero)},        {"lf", optional_number(r.lf)}};
}

void from_json(const json& j, ReportRow& r) {
  r = ReportRow{};
  r.domain = j.at("domain").get<std::string>();
  r.approach = j.at("approach").get<std::string>();
  r.runs = j.at("runs").get<std::size_t>();
  r.correct = j.at("correct").get<std::size_t>();
  r.clean = j.value("clean", std::size_t{0});
  r.acc = j.at("acc").get<double>();
  r.acc_zero = read_optional(j, "acc_zero");
  r.lf = read_optional(j, "lf");
}

void to_json(json& j, const Report& r) { j = json{{"rows", r.rows}}; }

void from_json(const json& j, Report& r) { r.rows = j.at("rows").get<std::vector<ReportRow>>(); }

std::string format_metric(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "–";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

namespace {

// Display width, counting each UTF-8 sequence as one column.
std::size_t width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::vector<std::vector<std::string>> cells(const Report& report) {
  std::vector<std::vector<std::string>> out{{"domain", "approach", "runs", "Acc", "Acc0", "LF"}};
  for (const auto& r : report.rows) {
    out.push_back({r.domain, r.approach, std::to_string(r.runs), format_metric(r.acc), format_metric(r.acc_zero),
                   format_metric(r.lf)});
  }
  return out;
}

}  // namespace

std::string render_table(const Report& report) {
  const auto rows = cells(report);
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], width(row[c]));
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(widths[c] - width(row[c]), ' ');
      // Text columns left-aligned, numbers right-aligned.
      if (c < 2) {
        os << row[c] << pad;
      } else {
        os << pad << row[c];
      }
      os << (c + 1 < row.size() ? "  " : "\n");
    }
  };
  emit(rows.front());
  std::size_t total = 0;
  for (auto w : widths) total += w;
  os << std::string(total + 2 * (widths.size() - 1), '-') << "\n";
  for (std::size_t i = 1; i < rows.size(); ++i) emit(rows[i]);
  return os.str();
}

std::string render_csv(const Report& report) {
  std::ostringstream os;
  os << "domain,approach,runs,correct,clean,acc,acc_zero,lf\n";
  auto num = [](const std::optional<double>& v) { return v ? format_metric(v) : std::string(); };
  for (const auto& r : report.rows) {
    os << r.domain << "," << r.approach << "," << r.runs << "," << r.correct << "," << r.clean << ","
       << format_metric(r.acc) << "," << num(r.acc_zero) << "," << num(r.lf) << "\n";
  }
  return os.str();
}

}  // namespace nlplan
