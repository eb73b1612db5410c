// SPDX-License-Identifier: Apache-2.0
#include "nlplan/search.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "nlplan/error.hpp"

namespace nlplan {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw EngineError("Rng::below requires a positive bound");
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

namespace {

using PackedState = std::vector<int>;

struct PackedHash {
  std::size_t operator()(const PackedState& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : s) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

struct PackedAction {
  std::size_t source;  // index into the ground action list
  std::vector<int> pre_pos;
  std::vector<int> pre_neg;
  std::vector<int> add;
  std::vector<int> del;
};

// Ground task with atoms interned to integers. Actions whose static
// preconditions fail in the initial state are dropped.
struct CompiledTask {
  std::vector<GroundAction> ground;
  std::vector<PackedAction> actions;
  PackedState init;
  std::vector<int> goal_pos;
  std::vector<int> goal_neg;
  bool goal_impossible = false;
};

CompiledTask compile(const Domain& dom, const Problem& prob) {
  CompiledTask task;
  task.ground = ground_all(dom, prob);

  std::set<std::string, std::less<>> fluent;
  for (const auto& a : dom.actions) {
    for (const auto& l : a.add_effects) fluent.insert(l.predicate);
    for (const auto& l : a.del_effects) fluent.insert(l.predicate);
  }
  const State init = initial_state(prob);

  std::map<Atom, int> ids;
  auto intern = [&](const Atom& a) {
    auto [it, inserted] = ids.emplace(a, static_cast<int>(ids.size()));
    return it->second;
  };
  for (const auto& a : init) task.init.push_back(intern(a));

  for (std::size_t i = 0; i < task.ground.size(); ++i) {
    const GroundAction& g = task.ground[i];
    PackedAction p{i, {}, {}, {}, {}};
    bool feasible = true;
    for (const auto& lit : g.precondition) {
      if (!fluent.contains(lit.atom.predicate)) {
        if (init.contains(lit.atom) != lit.positive) {
          feasible = false;
          break;
        }
        continue;
      }
      (lit.positive ? p.pre_pos : p.pre_neg).push_back(intern(lit.atom));
    }
    if (!feasible) continue;
    for (const auto& a : g.add) p.add.push_back(intern(a));
    for (const auto& a : g.del) p.del.push_back(intern(a));
    task.actions.push_back(std::move(p));
  }
  for (const auto& lit : prob.goal) {
    Atom atom{lit.predicate, lit.args};
    auto it = ids.find(atom);
    if (it == ids.end()) {
      // Never mentioned by init or any effect: always false.
      if (lit.positive) task.goal_impossible = true;
      continue;
    }
    (lit.positive ? task.goal_pos : task.goal_neg).push_back(it->second);
  }
  std::sort(task.init.begin(), task.init.end());
  return task;
}

bool holds(const PackedState& s, int atom) { return std::binary_search(s.begin(), s.end(), atom); }

bool packed_applicable(const PackedState& s, const PackedAction& a) {
  for (int x : a.pre_pos) {
    if (!holds(s, x)) return false;
  }
  for (int x : a.pre_neg) {
    if (holds(s, x)) return false;
  }
  return true;
}

PackedState packed_apply(const PackedState& s, const PackedAction& a) {
  PackedState next;
  next.reserve(s.size() + a.add.size());
  for (int x : s) {
    if (std::find(a.del.begin(), a.del.end(), x) == a.del.end()) next.push_back(x);
  }
  for (int x : a.add) next.push_back(x);
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

bool packed_goal(const CompiledTask& task, const PackedState& s) {
  if (task.goal_impossible) return false;
  for (int x : task.goal_pos) {
    if (!holds(s, x)) return false;
  }
  for (int x : task.goal_neg) {
    if (holds(s, x)) return false;
  }
  return true;
}

}  // namespace

SearchResult bfs_plan(const Domain& dom, const Problem& prob, std::chrono::duration<double> time_limit) {
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;
  const CompiledTask task = compile(dom, prob);

  struct Node {
    std::size_t parent;
    std::size_t action;
  };
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<Node> nodes;
  std::vector<const PackedState*> node_state;
  std::unordered_map<PackedState, std::size_t, PackedHash> visited;
  std::deque<std::size_t> frontier;

  auto extract = [&](std::size_t node) {
    std::vector<GroundAction> plan;
    for (std::size_t n = node; nodes[n].parent != kNone; n = nodes[n].parent) {
      plan.push_back(task.ground[task.actions[nodes[n].action].source]);
    }
    std::reverse(plan.begin(), plan.end());
    return plan;
  };
  auto finish = [&] {
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
  };

  auto [root, _] = visited.emplace(task.init, 0);
  nodes.push_back({kNone, kNone});
  node_state.push_back(&root->first);
  if (packed_goal(task, task.init)) {
    result.plan = std::vector<GroundAction>{};
    return finish();
  }
  frontier.push_back(0);

  while (!frontier.empty()) {
    if ((result.expanded & 255) == 0 && std::chrono::steady_clock::now() - start > time_limit) {
      result.timed_out = true;
      return finish();
    }
    const std::size_t node = frontier.front();
    frontier.pop_front();
    ++result.expanded;
    const PackedState& state = *node_state[node];
    for (std::size_t i = 0; i < task.actions.size(); ++i) {
      const PackedAction& a = task.actions[i];
      if (!packed_applicable(state, a)) continue;
      PackedState next = packed_apply(state, a);
      auto [it, inserted] = visited.emplace(std::move(next), nodes.size());
      if (!inserted) continue;
      nodes.push_back({node, i});
      node_state.push_back(&it->first);
      if (packed_goal(task, it->first)) {
        result.plan = extract(nodes.size() - 1);
        return finish();
      }
      frontier.push_back(nodes.size() - 1);
    }
  }
  return finish();
}

std::vector<State> reachable_states(const Domain& dom, const Problem& prob, std::size_t max_states) {
  const std::vector<GroundAction> actions = ground_all(dom, prob);
  std::unordered_map<State, bool, StateHash> seen;
  std::vector<State> order{initial_state(prob)};
  seen.emplace(order.front(), true);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& a : actions) {
      if (!applicable(order[i], a)) continue;
      State next = apply(order[i], a);
      if (!seen.emplace(next, true).second) continue;
      if (order.size() >= max_states) throw EngineError("more than " + std::to_string(max_states) + " reachable states");
      order.push_back(std::move(next));
    }
  }
  return order;
}

RolloutOutcome random_rollout(const Domain& dom, const Problem& prob, std::size_t step_limit, std::uint64_t seed) {
  RolloutOutcome out;
  out.seed = seed;
  Rng rng(seed);
  const std::vector<GroundAction> actions = ground_all(dom, prob);
  State state = initial_state(prob);
  out.reached_goal = goal_satisfied(state, prob);
  std::vector<std::size_t> choices;
  while (!out.reached_goal && out.steps < step_limit) {
    choices.clear();
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (applicable(state, actions[i])) choices.push_back(i);
    }
    if (choices.empty()) break;
    const GroundAction& pick = actions[choices[rng.below(choices.size())]];
    state = apply(state, pick);
    out.trace.push_back(pick);
    ++out.steps;
    out.reached_goal = goal_satisfied(state, prob);
  }
  return out;
}

BaselineReport random_baseline(const Domain& dom, const std::vector<Problem>& problems, std::size_t runs,
                               std::size_t step_limit, std::uint64_t seed) {
  BaselineReport report;
  double total = 0.0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    BaselineProblemResult row;
    row.problem = problems[i].name;
    std::size_t successes = 0;
    for (std::size_t r = 0; r < runs; ++r) {
      row.runs.push_back(random_rollout(dom, problems[i], step_limit, seed + 1000 * i + r));
      if (row.runs.back().reached_goal) ++successes;
    }
    row.accuracy = runs == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(runs);
    total += row.accuracy;
    report.problems.push_back(std::move(row));
  }
  report.mean_accuracy = problems.empty() ? 0.0 : total / static_cast<double>(problems.size());
  return report;
}

}  // namespace nlplan
