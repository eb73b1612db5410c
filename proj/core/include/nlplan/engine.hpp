// SPDX-License-Identifier: Apache-2.0
//
// Domain engine: grounding, closed-world state transitions, plan validation
// and natural-language observations.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlplan/pddl.hpp"

namespace nlplan {

class TemplateMap;
class NamingMap;

// Closed-world state: the sorted set of true ground atoms.
class State {
 public:
  State() = default;
  explicit State(std::vector<Atom> atoms);

  bool contains(const Atom& atom) const;
  void insert(const Atom& atom);
  void erase(const Atom& atom);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  auto begin() const noexcept { return atoms_.begin(); }
  auto end() const noexcept { return atoms_.end(); }

  friend bool operator==(const State&, const State&) = default;

 private:
  std::vector<Atom> atoms_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept;
};

struct GroundLiteral {
  Atom atom;
  bool positive = true;

  friend bool operator==(const GroundLiteral&, const GroundLiteral&) = default;
};

struct GroundAction {
  std::string name;
  std::vector<std::string> args;
  // Schema parameter names, parallel to `args`.
  std::vector<std::string> params;
  // Precondition literals in schema declaration order.
  std::vector<GroundLiteral> precondition;
  std::vector<Atom> add;
  std::vector<Atom> del;

  // `(name arg1 arg2)`
  std::string to_pddl() const;

  friend bool operator==(const GroundAction& a, const GroundAction& b) {
    return a.name == b.name && a.args == b.args;
  }
};

struct Observation {
  std::string text;
  bool executable = true;
  // Natural-language phrases of the unsatisfied preconditions.
  std::vector<std::string> failure_reasons;
};

enum class ValidationMode { kStrict, kLenient };

struct ValidationReport {
  std::vector<bool> step_executable;
  State final_state;
  bool goal_satisfied = false;
  std::size_t executable_step_count = 0;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Substitutes `binding` for the schema's parameters. Throws ValidationError on
// an unknown action, wrong arity, unknown object or (typed domains) a type
// mismatch.
GroundAction ground(const Domain& domain, const Problem& problem, std::string_view action,
                    const std::vector<std::string>& args);

// All type-consistent instantiations, ordered by schema name and then by the
// argument tuple. Objects may repeat across parameters.
std::vector<GroundAction> ground_all(const Domain& domain, const Problem& problem);

State initial_state(const Problem& problem);

bool applicable(const State& state, const GroundAction& action);
std::vector<GroundLiteral> failed_preconditions(const State& state, const GroundAction& action);
// Deletes before adds. Throws EngineError if `action` is not applicable.
State apply(const State& state, const GroundAction& action);
bool goal_satisfied(const State& state, const Problem& problem);
bool goal_satisfied(const State& state, std::span<const Literal> goal);

// Strict mode stops at the first inapplicable step. Lenient mode skips it,
// leaving the state untouched, and carries on.
ValidationReport validate_plan(const Problem& problem, std::span<const GroundAction> plan,
                               ValidationMode mode);

// "I <action>." or "I cannot <action> because <reason> and <reason>."
Observation observe(const GroundAction& action, const State& state, const TemplateMap& templates,
                    const NamingMap& names);

void to_json(nlohmann::json& j, const ValidationReport& report);
void from_json(const nlohmann::json& j, ValidationReport& report);

}  // namespace nlplan
