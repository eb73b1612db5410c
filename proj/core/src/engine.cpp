// SPDX-License-Identifier: Apache-2.0
#include "nlplan/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "nlplan/error.hpp"
#include "nlplan/nl_encoding.hpp"

namespace nlplan {

State::State(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool State::contains(const Atom& atom) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

void State::insert(const Atom& atom) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end() || *it != atom) atoms_.insert(it, atom);
}

void State::erase(const Atom& atom) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it != atoms_.end() && *it == atom) atoms_.erase(it);
}

std::size_t StateHash::operator()(const State& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  std::hash<std::string> hs;
  for (const auto& atom : s) {
    mix(hs(atom.predicate));
    for (const auto& a : atom.args) mix(hs(a));
    mix(0x9e3779b97f4a7c15ull);
  }
  return h;
}

std::string GroundAction::to_pddl() const {
  std::string s = "(" + name;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

namespace {

Atom substitute(const Literal& lit, const std::map<std::string, std::string, std::less<>>& binding) {
  Atom atom{lit.predicate, {}};
  atom.args.reserve(lit.args.size());
  for (const auto& arg : lit.args) {
    auto it = binding.find(arg);
    atom.args.push_back(it == binding.end() ? arg : it->second);
  }
  return atom;
}

GroundAction instantiate(const ActionSchema& schema, const std::vector<std::string>& args) {
  std::map<std::string, std::string, std::less<>> binding;
  GroundAction g;
  g.name = schema.name;
  g.args = args;
  for (std::size_t i = 0; i < schema.params.size(); ++i) {
    binding[schema.params[i].name] = args[i];
    g.params.push_back(schema.params[i].name);
  }
  for (const auto& lit : schema.precondition) g.precondition.push_back({substitute(lit, binding), lit.positive});
  for (const auto& lit : schema.add_effects) g.add.push_back(substitute(lit, binding));
  for (const auto& lit : schema.del_effects) g.del.push_back(substitute(lit, binding));
  return g;
}

}  // namespace

GroundAction ground(const Domain& dom, const Problem& prob, std::string_view action,
                    const std::vector<std::string>& args) {
  const ActionSchema* schema = dom.find_action(action);
  if (!schema) throw ValidationError("unknown action '" + std::string(action) + "'");
  if (schema->params.size() != args.size()) {
    throw ValidationError("action '" + schema->name + "' expects " + std::to_string(schema->params.size()) +
                          " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const TypedName* obj = prob.find_object(args[i]);
    if (!obj) throw ValidationError("unknown object '" + args[i] + "'");
    if (dom.typed && !dom.types.is_subtype(obj->type, schema->params[i].type)) {
      throw ValidationError("object '" + args[i] + "' of type '" + obj->type + "' does not fit parameter " +
                            schema->params[i].name + " - " + schema->params[i].type);
    }
  }
  return instantiate(*schema, args);
}

std::vector<GroundAction> ground_all(const Domain& dom, const Problem& prob) {
  std::vector<TypedName> objects = prob.all_objects();
  std::sort(objects.begin(), objects.end(),
            [](const TypedName& a, const TypedName& b) { return a.name < b.name; });

  std::vector<const ActionSchema*> schemas;
  for (const auto& a : dom.actions) schemas.push_back(&a);
  std::sort(schemas.begin(), schemas.end(),
            [](const ActionSchema* a, const ActionSchema* b) { return a->name < b->name; });

  std::vector<GroundAction> out;
  for (const ActionSchema* schema : schemas) {
    // Candidate objects per parameter, in name order.
    std::vector<std::vector<std::string>> candidates;
    bool empty = false;
    for (const auto& param : schema->params) {
      std::vector<std::string> fit;
      for (const auto& o : objects) {
        if (!dom.typed || dom.types.is_subtype(o.type, param.type)) fit.push_back(o.name);
      }
      empty = empty || fit.empty();
      candidates.push_back(std::move(fit));
    }
    if (empty) continue;
    // Odometer over the candidate lists; the last parameter varies fastest.
    std::vector<std::size_t> index(candidates.size(), 0);
    std::vector<std::string> args(candidates.size());
    for (;;) {
      for (std::size_t i = 0; i < candidates.size(); ++i) args[i] = candidates[i][index[i]];
      out.push_back(instantiate(*schema, args));
      bool done = true;
      for (std::size_t pos = candidates.size(); pos-- > 0;) {
        if (++index[pos] < candidates[pos].size()) {
          done = false;
          break;
        }
        index[pos] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

State initial_state(const Problem& prob) { return State(prob.init); }

bool applicable(const State& state, const GroundAction& action) {
  return std::all_of(action.precondition.begin(), action.precondition.end(),
                     [&](const GroundLiteral& l) { return state.contains(l.atom) == l.positive; });
}

std::vector<GroundLiteral> failed_preconditions(const State& state, const GroundAction& action) {
  std::vector<GroundLiteral> failed;
  for (const auto& l : action.precondition) {
    if (state.contains(l.atom) != l.positive) failed.push_back(l);
  }
  return failed;
}

State apply(const State& state, const GroundAction& action) {
  if (!applicable(state, action)) {
    throw EngineError("action " + action.to_pddl() + " is not applicable");
  }
  State next = state;
  for (const auto& a : action.del) next.erase(a);
  for (const auto& a : action.add) next.insert(a);
  return next;
}

bool goal_satisfied(const State& state, std::span<const Literal> goal) {
  return std::all_of(goal.begin(), goal.end(), [&](const Literal& l) {
    return state.contains(Atom{l.predicate, l.args}) == l.positive;
  });
}

bool goal_satisfied(const State& state, const Problem& prob) { return goal_satisfied(state, prob.goal); }

ValidationReport validate_plan(const Problem& prob, std::span<const GroundAction> plan, ValidationMode mode) {
  ValidationReport report;
  State state = initial_state(prob);
  for (const auto& action : plan) {
    if (applicable(state, action)) {
      state = apply(state, action);
      report.step_executable.push_back(true);
      ++report.executable_step_count;
    } else {
      report.step_executable.push_back(false);
      if (mode == ValidationMode::kStrict) break;
    }
  }
  report.goal_satisfied = goal_satisfied(state, prob);
  report.final_state = std::move(state);
  return report;
}

Observation observe(const GroundAction& action, const State& state, const TemplateMap& templates,
                    const NamingMap& names) {
  Observation obs;
  const std::string phrase = encode_ground_action(action, templates, names);
  const auto failed = failed_preconditions(state, action);
  if (failed.empty()) {
    obs.text = "I " + phrase + ".";
    return obs;
  }
  obs.executable = false;
  for (const auto& lit : failed) {
    // The reason states the negation of the unmet requirement.
    obs.failure_reasons.push_back(
        verbalize_literal(GroundLiteral{lit.atom, !lit.positive}, templates, names));
  }
  std::string reasons;
  for (const auto& r : obs.failure_reasons) {
    if (!reasons.empty()) reasons += " and ";
    reasons += r;
  }
  obs.text = "I cannot " + phrase + " because " + reasons + ".";
  return obs;
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : report.final_state) atoms.push_back(to_string(a));
  j = nlohmann::json{{"step_executable", report.step_executable},
                     {"goal_satisfied", report.goal_satisfied},
                     {"executable_step_count", report.executable_step_count},
                     {"final_state", std::move(atoms)}};
}

void from_json(const nlohmann::json& j, ValidationReport& report) {
  report = ValidationReport{};
  report.step_executable = j.at("step_executable").get<std::vector<bool>>();
  report.goal_satisfied = j.at("goal_satisfied").get<bool>();
  report.executable_step_count = j.at("executable_step_count").get<std::size_t>();
  std::vector<Atom> atoms;
  for (const auto& s : j.value("final_state", nlohmann::json::array())) {
    // "(pred a b)"
    std::string text = s.get<std::string>();
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
      throw ValidationError("bad atom '" + text + "' in report");
    }
    std::vector<std::string> words;
    std::string word;
    for (char c : text.substr(1, text.size() - 2) + " ") {
      if (c != ' ') {
        word.push_back(c);
      } else if (!word.empty()) {
        words.push_back(std::move(word));
        word.clear();
      }
    }
    if (words.empty()) throw ValidationError("bad atom '" + text + "' in report");
    Atom atom{words.front(), {words.begin() + 1, words.end()}};
    atoms.push_back(std::move(atom));
  }
  report.final_state = State(std::move(atoms));
}

}  // namespace nlplan
