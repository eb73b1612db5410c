// SPDX-License-Identifier: Apache-2.0
//
// Optimal breadth-first planner and the random-rollout baseline.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nlplan/engine.hpp"
#include "nlplan/pddl.hpp"

namespace nlplan {

// mt19937_64 with a hand-rolled bounded draw, so sequences are identical on
// every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

struct SearchResult {
  std::optional<std::vector<GroundAction>> plan;
  std::size_t expanded = 0;
  std::chrono::duration<double> wall_time{0};
  bool timed_out = false;
};

// Shortest plan by unit-cost BFS over the grounded task. Successors are
// generated in ground_all order, so the result is deterministic.
SearchResult bfs_plan(const Domain& domain, const Problem& problem,
                      std::chrono::duration<double> time_limit = std::chrono::seconds(600));

// Every state reachable from the initial state. Throws EngineError once more
// than `max_states` states have been found.
std::vector<State> reachable_states(const Domain& domain, const Problem& problem, std::size_t max_states);

struct RolloutOutcome {
  std::size_t steps = 0;
  bool reached_goal = false;
  std::uint64_t seed = 0;
  std::vector<GroundAction> trace;
};

// Picks an applicable action uniformly at random until the goal holds, no
// action applies or `step_limit` actions have been taken.
RolloutOutcome random_rollout(const Domain& domain, const Problem& problem, std::size_t step_limit = 24,
                              std::uint64_t seed = 0);

struct BaselineProblemResult {
  std::string problem;
  double accuracy = 0.0;
  std::vector<RolloutOutcome> runs;
};

struct BaselineReport {
  std::vector<BaselineProblemResult> problems;
  double mean_accuracy = 0.0;
};

// Run r on problem i uses seed `seed + 1000 * i + r`.
BaselineReport random_baseline(const Domain& domain, const std::vector<Problem>& problems, std::size_t runs = 5,
                               std::size_t step_limit = 24, std::uint64_t seed = 0);

}  // namespace nlplan
