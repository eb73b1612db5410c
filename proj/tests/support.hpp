// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit and acceptance tests: bundled data access and
// small independent oracles.
#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nlplan/engine.hpp"
#include "nlplan/harness.hpp"
#include "nlplan/metrics.hpp"
#include "nlplan/nl_encoding.hpp"
#include "nlplan/pddl.hpp"

namespace nlplan::test {

inline std::filesystem::path data_dir() { return NLPLAN_TEST_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return NLPLAN_TEST_FIXTURE_DIR; }

inline Domain bundled_domain(const std::string& name) {
  return parse_domain(read_file((data_dir() / name / "domain.pddl").string()));
}

inline std::vector<std::filesystem::path> bundled_problem_paths(const std::string& name) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / name / "problems")) {
    if (e.path().extension() == ".pddl") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Problem bundled_problem(const std::string& domain_name, const std::string& problem, const Domain& domain) {
  return parse_problem(read_file((data_dir() / domain_name / "problems" / (problem + ".pddl")).string()), domain);
}

inline std::vector<Problem> bundled_problems(const std::string& name, const Domain& domain) {
  std::vector<Problem> out;
  for (const auto& p : bundled_problem_paths(name)) out.push_back(parse_problem(read_file(p.string()), domain));
  return out;
}

inline TemplateMap bundled_templates(const std::string& name) {
  return TemplateMap::load(data_dir() / name / "templates.json");
}

inline GoldPlanSet bundled_gold(const std::string& name) { return load_gold_plans(data_dir() / name / "gold_plans.json"); }

// Optimal plan length by iterative-deepening depth-first search over the
// ground actions, with per-iteration cycle checking along the current path.
inline std::optional<std::size_t> iddfs_plan_length(const Domain& domain, const Problem& problem,
                                                    std::size_t max_depth) {
  const auto actions = ground_all(domain, problem);
  std::vector<State> path;
  std::function<bool(const State&, std::size_t)> dfs = [&](const State& s, std::size_t budget) {
    if (goal_satisfied(s, problem)) return true;
    if (budget == 0) return false;
    for (const auto& a : actions) {
      if (!applicable(s, a)) continue;
      State next = apply(s, a);
      if (std::find(path.begin(), path.end(), next) != path.end()) continue;
      path.push_back(next);
      const bool found = dfs(next, budget - 1);
      path.pop_back();
      if (found) return true;
    }
    return false;
  };
  const State init = initial_state(problem);
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    path.assign(1, init);
    if (dfs(init, depth)) return depth;
  }
  return std::nullopt;
}

// Atoms whose predicate is not in `drop`.
inline std::set<Atom> without_predicates(const State& s, const std::set<std::string>& drop) {
  std::set<Atom> out;
  for (const auto& a : s) {
    if (!drop.count(a.predicate)) out.insert(a);
  }
  return out;
}

// Random run record: `steps` flags, of which `bad` are non-executable, and a
// correctness flag independent of the flags.
inline RunResult random_run(std::mt19937& rng) {
  RunResult r;
  r.optimal_length = rng() % 8;
  r.correct = rng() % 2 == 0;
  const std::size_t steps = rng() % 12;
  std::size_t executed = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    const bool ok = rng() % 4 != 0;
    r.report.step_executable.push_back(ok);
    executed += ok ? 1 : 0;
  }
  r.report.executable_step_count = executed;
  return r;
}

// Reference metric definitions written from scratch for the tests.
struct NaiveMetrics {
  double acc = 0.0;
  double acc_zero = 0.0;
  std::optional<double> lf;
};

inline NaiveMetrics naive_metrics(const std::vector<RunResult>& runs) {
  NaiveMetrics m;
  if (runs.empty()) return m;
  double correct = 0;
  double clean = 0;
  double lf_sum = 0;
  int lf_n = 0;
  for (const auto& r : runs) {
    if (!r.correct) continue;
    correct += 1;
    bool all = true;
    for (bool b : r.report.step_executable) all = all && b;
    if (all) clean += 1;
    if (r.optimal_length > 0) {
      lf_sum += double(r.report.executable_step_count) / double(r.optimal_length);
      ++lf_n;
    }
  }
  m.acc = correct / double(runs.size());
  m.acc_zero = clean / double(runs.size());
  if (lf_n > 0) m.lf = lf_sum / lf_n;
  return m;
}

}  // namespace nlplan::test
