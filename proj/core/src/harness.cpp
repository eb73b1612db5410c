// SPDX-License-Identifier: Apache-2.0
#include "nlplan/harness.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlplan/error.hpp"
#include "nlplan/search.hpp"

namespace nlplan {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string word;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!word.empty()) words.push_back(std::move(word));
      word.clear();
    } else {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!word.empty()) words.push_back(std::move(word));
  return words;
}

// Text after `prefix` when the trimmed line starts with it.
std::optional<std::string> after_prefix(std::string_view line, std::string_view prefix) {
  line = trim(line);
  if (line.substr(0, prefix.size()) != prefix) return std::nullopt;
  return std::string(trim(line.substr(prefix.size())));
}

std::string strip_period(std::string s) {
  while (!s.empty() && (s.back() == '.' || std::isspace(static_cast<unsigned char>(s.back())))) s.pop_back();
  return s;
}

std::string describe_state_block(const std::string& init_text) {
  return init_text.empty() ? "Initially, nothing is the case." : "Initially, the following is the case: " + init_text;
}

}  // namespace

// ---------------------------------------------------------------------------
// Preparation

PreparedDomain prepare_domain(const Domain& domain, TemplateMap templates) {
  PreparedDomain out;
  out.domain = domain;
  out.detyped = detype(domain);
  templates.require_complete(out.detyped);
  out.text = encode_domain(domain, templates);
  out.templates = std::move(templates);
  return out;
}

PreparedProblem prepare_problem(const PreparedDomain& domain, const Problem& problem) {
  PreparedProblem out;
  out.problem = problem;
  out.detyped = detype(domain.domain, problem);
  out.names = rename_objects(problem);
  out.goal_text = encode_goal(out.detyped.goal, domain.templates, out.names);
  out.objects_text = encode_objects(out.detyped, out.names);
  out.init_text = encode_state(State(out.detyped.init), domain.templates, out.names);
  return out;
}

// ---------------------------------------------------------------------------
// Gold plans

GoldPlanSet load_gold_plans(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold plans '" + path.string() + "'");
  GoldPlanSet out;
  try {
    json j = json::parse(in);
    for (const auto& [name, entry] : j.at("problems").items()) {
      GoldPlan plan;
      plan.status = entry.value("status", std::string("solved"));
      plan.actions = entry.value("plan", std::vector<std::string>{});
      plan.seconds = entry.value("seconds", 0.0);
      out.emplace(name, std::move(plan));
    }
  } catch (const json::exception& ex) {
    throw Error("bad gold plans '" + path.string() + "': " + ex.what());
  }
  return out;
}

void save_gold_plans(const std::filesystem::path& path, const GoldPlanSet& plans) {
  json problems = json::object();
  for (const auto& [name, plan] : plans) {
    problems[name] = {{"status", plan.status}, {"length", plan.length()}, {"plan", plan.actions}};
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write gold plans '" + path.string() + "'");
  out << json{{"problems", problems}}.dump(2) << "\n";
}

GroundAction parse_ground_action(const Domain& domain, const Problem& problem, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ValidationError("malformed action '" + std::string(text) + "'");
  }
  auto words = split_words(text.substr(1, text.size() - 2));
  if (words.empty()) throw ValidationError("empty action '" + std::string(text) + "'");
  std::string name = words.front();
  words.erase(words.begin());
  return ground(domain, problem, name, words);
}

std::vector<GroundAction> parse_plan(const Domain& domain, const Problem& problem,
                                     const std::vector<std::string>& actions) {
  std::vector<GroundAction> plan;
  for (const auto& a : actions) plan.push_back(parse_ground_action(domain, problem, a));
  return plan;
}

std::string select_example_problem(const GoldPlanSet& plans) {
  // std::map iterates in name order.
  for (const auto& [name, plan] : plans) {
    if (plan.solved() && (plan.length() == 4 || plan.length() == 5)) return name;
  }
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [name, plan] : plans) {
    if (!plan.solved()) continue;
    if (!best || plan.length() < best_len) {
      best = &name;
      best_len = plan.length();
    }
  }
  if (!best) throw HarnessError("no solved problem to use as example");
  return *best;
}

// ---------------------------------------------------------------------------
// Few-shot examples

std::size_t example_step_count(Approach approach, std::size_t plan_length) {
  return uses_thoughts(approach) ? std::min(plan_length, kShortExampleSteps) : plan_length;
}

namespace {

FewShotExample build_example(Approach approach, const PreparedDomain& domain, const PreparedProblem& problem,
                             const std::vector<GroundAction>& plan, const std::vector<std::string>& thoughts) {
  const auto check = validate_plan(problem.detyped, plan, ValidationMode::kStrict);
  if (check.executable_step_count != plan.size() || !check.goal_satisfied) {
    throw HarnessError("gold plan for '" + problem.problem.name + "' does not solve the problem");
  }
  const std::size_t keep = example_step_count(approach, plan.size());
  if (uses_thoughts(approach) && thoughts.size() != keep) {
    throw HarnessError("example needs " + std::to_string(keep) + " thoughts, got " +
                       std::to_string(thoughts.size()));
  }

  FewShotExample ex;
  ex.approach = approach;
  ex.goal_text = problem.goal_text;
  ex.objects_text = problem.objects_text;
  State state = initial_state(problem.detyped);
  const std::size_t skip = plan.size() - keep;
  for (std::size_t i = 0; i < skip; ++i) state = apply(state, plan[i]);
  ex.init_text = encode_state(state, domain.templates, problem.names);

  for (std::size_t i = skip; i < plan.size(); ++i) {
    ExampleStep step;
    if (uses_thoughts(approach)) step.thought = thoughts[i - skip];
    step.action = encode_ground_action(plan[i], domain.templates, problem.names);
    if (is_interactive(approach)) step.observation = observe(plan[i], state, domain.templates, problem.names).text;
    state = apply(state, plan[i]);
    ex.steps.push_back(std::move(step));
  }
  return ex;
}

}  // namespace

FewShotExample build_fewshot(Approach approach, const PreparedDomain& domain, const PreparedProblem& problem,
                             const std::vector<GroundAction>& gold_plan, const std::vector<std::string>& thoughts) {
  return build_example(approach, domain, problem, gold_plan, thoughts);
}

FewShotExample build_thought_skeleton(const PreparedDomain& domain, const PreparedProblem& problem,
                                      const std::vector<GroundAction>& gold_plan) {
  std::vector<std::string> placeholders;
  for (std::size_t i = 0; i < example_step_count(Approach::kReAct, gold_plan.size()); ++i) {
    placeholders.push_back("{THOUGHT " + std::to_string(i + 1) + "}");
  }
  return build_example(Approach::kReAct, domain, problem, gold_plan, placeholders);
}

std::string render_example(const FewShotExample& ex, const HarnessConfig& config) {
  std::ostringstream os;
  os << ex.goal_text << "\n" << ex.objects_text << "\n" << describe_state_block(ex.init_text) << "\n";
  const bool interactive = is_interactive(ex.approach);
  if (!interactive) os << config.plan_begin << "\n";
  for (const auto& step : ex.steps) {
    if (step.thought) os << "Thought: " << *step.thought << "\n";
    os << "Action: " << step.action << "\n";
    if (interactive && step.observation) os << "Observation: " << *step.observation << "\n";
  }
  os << config.goal_marker << "\n";
  if (!interactive) os << config.plan_end << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Thought generation

namespace {

const char* const kThoughtSystem =
    "You write the reasoning of a planning agent. You are given the description of a domain and a worked "
    "example in which every thought is replaced by a numbered placeholder such as {THOUGHT 1}. Write one short "
    "thought for each placeholder that explains why the following action is taken. Answer with a numbered "
    "list, one thought per line, in the form \"1. <thought>\".";

std::string numbered(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += std::to_string(i + 1) + ". " + items[i] + "\n";
  return out;
}

std::vector<std::string> parse_numbered(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& raw : split_lines(text)) {
    std::string_view line = trim(raw);
    std::size_t digits = 0;
    while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) ++digits;
    if (digits == 0 || digits >= line.size() || (line[digits] != '.' && line[digits] != ')')) continue;
    std::string thought(trim(line.substr(digits + 1)));
    if (!thought.empty()) out.push_back(std::move(thought));
  }
  return out;
}

}  // namespace

std::vector<std::string> generate_thoughts(const std::string& domain_text, const FewShotExample& skeleton,
                                           const ThoughtSeed& seed, LlmBackend& llm) {
  if (domain_text == seed.domain_text && render_example(skeleton) == render_example(seed.skeleton)) {
    return seed.thoughts;
  }
  const std::size_t needed = skeleton.steps.size();
  std::vector<ChatMessage> messages{
      {ChatRole::kSystem, kThoughtSystem},
      {ChatRole::kUser, seed.domain_text + "\n\n" + render_example(seed.skeleton)},
      {ChatRole::kAssistant, numbered(seed.thoughts)},
      {ChatRole::kUser, domain_text + "\n\n" + render_example(skeleton)},
  };
  std::size_t got = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::string raw = llm.complete(ChatRequest::make(LlmPurpose::kThoughtGeneration, messages));
    auto thoughts = parse_numbered(raw);
    if (thoughts.size() == needed) return thoughts;
    got = thoughts.size();
    messages.push_back({ChatRole::kAssistant, raw});
    messages.push_back({ChatRole::kUser, "You wrote " + std::to_string(got) + " thoughts but the example has " +
                                             std::to_string(needed) +
                                             " placeholders. Write exactly one thought per placeholder."});
  }
  throw HarnessError("thought generation returned " + std::to_string(got) + " thoughts for " +
                     std::to_string(needed) + " placeholders; write the thoughts for this example manually");
}

// ---------------------------------------------------------------------------
// Translation

const std::vector<std::string>& synthetic_object_pool() {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> p;
    for (char c = 'a'; c <= 'z'; ++c) p.push_back(std::string("obj_") + c);
    return p;
  }();
  return pool;
}

namespace {

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

std::string action_signature(const std::string& name, const std::vector<std::string>& params) {
  std::string s = "(" + name;
  for (const auto& p : params) s += " " + p;
  return s + ")";
}

}  // namespace

TranslationPrompt build_translation_prompt(const PreparedDomain& domain, const NamingMap& names,
                                           std::uint64_t seed) {
  Rng rng(seed);
  const auto& actions = domain.detyped.actions;
  std::vector<std::size_t> order(actions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);

  // Distinct arities first, then any remaining actions.
  std::vector<std::size_t> chosen;
  std::set<std::size_t> arities;
  for (std::size_t i : order) {
    if (chosen.size() < 5 && arities.insert(actions[i].params.size()).second) chosen.push_back(i);
  }
  for (std::size_t i : order) {
    if (chosen.size() >= 5) break;
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  }

  TranslationPrompt prompt;
  std::ostringstream os;
  os << "Your task is to translate actions written in natural language into PDDL actions.\n\n";
  os << "The domain has the following actions:\n";
  for (const auto& a : actions) {
    const auto& entry = domain.templates.action(a.name);
    os << "PDDL: " << action_signature(a.name, entry.params) << "\nNL: " << entry.tmpl.text() << "\n";
  }
  os << "\nExamples:\n";
  for (std::size_t i : chosen) {
    const auto& entry = domain.templates.action(actions[i].name);
    std::vector<std::string> pool = synthetic_object_pool();
    shuffle(pool, rng);
    std::vector<std::string> args(pool.begin(), pool.begin() + static_cast<long>(entry.params.size()));
    for (const auto& o : args) {
      if (std::find(prompt.example_objects.begin(), prompt.example_objects.end(), o) == prompt.example_objects.end()) {
        prompt.example_objects.push_back(o);
      }
    }
    os << "NL: " << entry.render(args) << "\nPDDL: " << action_signature(actions[i].name, args) << "\n";
  }
  std::vector<std::string> objects = prompt.example_objects;
  for (const auto& [pddl, nl] : names.pairs()) objects.push_back(nl);
  os << "\nThe following objects are available: " << join_list(objects) << ".\n\n";
  os << "Answer with the PDDL action only, in the form (action-name object1 object2 ...), using the object names "
        "exactly as they appear in the natural-language action.";
  prompt.text = os.str();
  return prompt;
}

TranslationResult translate_action(const std::string& nl_action, const TranslationPrompt& prompt,
                                   const PreparedDomain& domain, const PreparedProblem& problem,
                                   LlmBackend& translator) {
  TranslationResult out;
  const ChatRequest req = ChatRequest::make(LlmPurpose::kTranslation,
                                            {{ChatRole::kSystem, prompt.text}, {ChatRole::kUser, nl_action}});
  out.request_digest = request_digest(req);
  const std::string raw = translator.complete(req);
  out.response_digest = sha256_hex(raw);

  const auto open = raw.find('(');
  const auto close = open == std::string::npos ? std::string::npos : raw.find(')', open);
  if (close == std::string::npos) {
    out.error = "no PDDL action in translation";
    return out;
  }
  auto words = split_words(std::string_view(raw).substr(open + 1, close - open - 1));
  if (words.empty()) {
    out.error = "empty PDDL action in translation";
    return out;
  }
  const ActionSchema* schema = domain.detyped.find_action(words.front());
  if (!schema) {
    out.error = "unknown action '" + words.front() + "'";
    return out;
  }
  std::vector<std::string> args;
  for (std::size_t i = 1; i < words.size(); ++i) {
    auto pddl = problem.names.pddl(words[i]);
    if (!pddl) {
      out.error = "unknown object '" + words[i] + "'";
      return out;
    }
    args.push_back(*pddl);
  }
  try {
    out.action = ground(domain.detyped, problem.detyped, schema->name, args);
  } catch (const ValidationError& ex) {
    out.error = ex.what();
  }
  return out;
}

MockBackend::Responder make_translation_oracle(const PreparedDomain& domain) {
  std::vector<std::pair<std::string, TemplateMap::Entry>> entries;
  for (const auto& a : domain.detyped.actions) entries.emplace_back(a.name, domain.templates.action(a.name));
  return [entries](const ChatRequest& req) -> std::string {
    if (req.messages.empty() || req.max_tokens != max_tokens_for(LlmPurpose::kTranslation)) {
      throw LlmError("translation oracle received a non-translation request");
    }
    const std::string nl(trim(req.messages.back().content));
    for (const auto& [name, entry] : entries) {
      if (auto args = entry.tmpl.match(nl, entry.params)) return action_signature(name, *args);
    }
    return "(unknown)";
  };
}

// ---------------------------------------------------------------------------
// Planning runs

std::string build_planning_prompt(Approach approach, const PreparedDomain& domain, const FewShotExample& example,
                                  const PreparedProblem& target, const HarnessConfig& config) {
  std::ostringstream os;
  os << "I am an agent acting in the world described below. I have to reach a goal by executing a sequence of "
        "actions.\n\n";
  os << target.goal_text << "\n\n";
  os << domain.text << "\n";
  os << "Here is an example of a problem and its solution:\n\n";
  os << render_example(example, config) << "\n";
  switch (approach) {
    case Approach::kBasic:
      os << "Now write the complete plan for the following problem. Write one action per line, each starting "
            "with \"Action: \". After the last action write "
         << config.goal_marker << " and then " << config.plan_end << ".\n\n";
      break;
    case Approach::kCoT:
      os << "Now write the complete plan for the following problem. Before each action write a line starting "
            "with \"Thought: \" that explains the next step, followed by a line starting with \"Action: \". "
            "After the last action write "
         << config.goal_marker << " and then " << config.plan_end << ".\n\n";
      break;
    case Approach::kAct:
      os << "Now solve the following problem. Answer with one line starting with \"Action: \" per turn; you will "
            "then receive an observation. Once the goal is reached, answer with "
         << config.goal_marker << ".\n\n";
      break;
    case Approach::kReAct:
      os << "Now solve the following problem. In each turn write a line starting with \"Thought: \" followed by a "
            "line starting with \"Action: \"; you will then receive an observation. Once the goal is reached, "
            "answer with "
         << config.goal_marker << ".\n\n";
      break;
  }
  os << target.objects_text << "\n" << describe_state_block(target.init_text) << "\n";
  if (!is_interactive(approach)) os << config.plan_begin << "\n";
  return os.str();
}

namespace {

struct StepOutcome {
  TrajectoryStep step;
  std::optional<GroundAction> applied;
};

// Translates and simulates one NL action against `state`.
StepOutcome execute_nl_action(const std::string& nl_action, const RunContext& ctx, const State& state,
                              LlmBackend& translator) {
  StepOutcome out;
  out.step.nl_action = nl_action;
  auto tr = translate_action(nl_action, ctx.translation, ctx.domain, ctx.problem, translator);
  if (!tr.action) {
    out.step.executable = false;
    out.step.observation = std::string(kUnparsableObservation);
    return out;
  }
  out.step.pddl_action = tr.action->to_pddl();
  Observation obs = observe(*tr.action, state, ctx.domain.templates, ctx.problem.names);
  out.step.executable = obs.executable;
  out.step.observation = obs.text;
  if (obs.executable) out.applied = std::move(tr.action);
  return out;
}

RunResult finish(Approach approach, const RunContext& ctx, Trajectory trajectory, State state,
                 std::size_t executed, bool correct) {
  RunResult r;
  r.problem = ctx.problem.problem.name;
  r.approach = approach;
  r.optimal_length = ctx.optimal_length;
  r.correct = correct;
  for (const auto& s : trajectory.steps) r.report.step_executable.push_back(s.executable);
  r.report.executable_step_count = executed;
  r.report.goal_satisfied = goal_satisfied(state, ctx.problem.detyped);
  r.report.final_state = std::move(state);
  r.trajectory = std::move(trajectory);
  return r;
}

}  // namespace

RunResult run_noninteractive(Approach approach, const RunContext& ctx, LlmBackend& planner,
                             LlmBackend& translator) {
  const HarnessConfig& cfg = ctx.config;
  const ChatRequest req =
      ChatRequest::make(LlmPurpose::kPlanning,
                        {{ChatRole::kSystem, build_planning_prompt(approach, ctx.domain, ctx.example, ctx.problem, cfg)}},
                        {cfg.plan_end});
  const std::string raw = planner.complete(req);
  const std::string req_digest = request_digest(req);
  const std::string resp_digest = sha256_hex(raw);

  Trajectory traj;
  traj.step_limit = cfg.step_limit;
  State state = initial_state(ctx.problem.detyped);
  std::size_t executed = 0;
  std::optional<std::string> pending_thought;
  for (const auto& line : split_lines(raw)) {
    const std::string_view t = trim(line);
    if (t == cfg.plan_end || t == cfg.goal_marker) break;
    if (auto thought = after_prefix(t, "Thought:")) {
      pending_thought = *thought;
      continue;
    }
    auto action = after_prefix(t, "Action:");
    if (!action) continue;
    StepOutcome out = execute_nl_action(strip_period(*action), ctx, state, translator);
    // Thoughts are not part of the plan; keep them for the log only.
    out.step.thought = std::exchange(pending_thought, std::nullopt);
    out.step.request_digest = req_digest;
    out.step.response_digest = resp_digest;
    if (out.applied) {
      state = apply(state, *out.applied);
      ++executed;
    }
    traj.steps.push_back(std::move(out.step));
  }
  const bool correct = goal_satisfied(state, ctx.problem.detyped);
  traj.status = correct ? TerminalStatus::kGoal : TerminalStatus::kPlanEnd;
  return finish(approach, ctx, std::move(traj), std::move(state), executed, correct);
}

RunResult run_interactive(Approach approach, const RunContext& ctx, LlmBackend& planner, LlmBackend& translator) {
  const HarnessConfig& cfg = ctx.config;
  std::vector<ChatMessage> messages{
      {ChatRole::kSystem, build_planning_prompt(approach, ctx.domain, ctx.example, ctx.problem, cfg)}};
  Trajectory traj;
  traj.step_limit = cfg.step_limit;
  traj.status = TerminalStatus::kLimit;
  State state = initial_state(ctx.problem.detyped);
  std::size_t executed = 0;
  std::size_t untranslatable = 0;

  while (traj.steps.size() < cfg.step_limit) {
    const ChatRequest req = ChatRequest::make(LlmPurpose::kPlanning, messages, {"\nObservation:"});
    const std::string raw = planner.complete(req);

    // Keep the response up to the first action or goal claim.
    std::vector<std::string> kept;
    std::optional<std::string> thought;
    std::optional<std::string> action;
    bool claim = false;
    for (const auto& line : split_lines(raw)) {
      const std::string_view t = trim(line);
      if (after_prefix(t, "Observation:")) break;
      if (t.empty()) continue;
      kept.emplace_back(t);
      if (t == cfg.goal_marker) {
        claim = true;
        break;
      }
      if (auto th = after_prefix(t, "Thought:")) {
        thought = thought ? *thought + " " + *th : *th;
        continue;
      }
      if (auto a = after_prefix(t, "Action:")) {
        action = strip_period(*a);
        break;
      }
    }
    std::string normalized;
    for (const auto& k : kept) normalized += (normalized.empty() ? "" : "\n") + k;
    messages.push_back({ChatRole::kAssistant, normalized});

    TrajectoryStep step;
    std::optional<GroundAction> applied;
    if (claim) {
      step.goal_claimed = true;
      step.executable = goal_satisfied(state, ctx.problem.detyped);
      if (!step.executable) step.observation = std::string(kFalseGoalObservation);
    } else if (!action) {
      step.executable = false;
      step.observation = std::string(kUnparsableObservation);
    } else {
      StepOutcome out = execute_nl_action(*action, ctx, state, translator);
      step = std::move(out.step);
      applied = std::move(out.applied);
    }
    step.thought = std::move(thought);
    step.request_digest = request_digest(req);
    step.response_digest = sha256_hex(raw);
    if (applied) {
      state = apply(state, *applied);
      ++executed;
    }
    const bool reached = step.goal_claimed && step.executable;
    untranslatable = step.observation == kUnparsableObservation ? untranslatable + 1 : 0;
    if (!reached) messages.push_back({ChatRole::kUser, "Observation: " + step.observation});
    traj.steps.push_back(std::move(step));
    if (reached) {
      traj.status = TerminalStatus::kGoal;
      break;
    }
    if (cfg.dead_after > 0 && untranslatable >= cfg.dead_after) {
      traj.status = TerminalStatus::kTranslationDead;
      break;
    }
  }
  const bool correct = traj.status == TerminalStatus::kGoal;
  return finish(approach, ctx, std::move(traj), std::move(state), executed, correct);
}

RunResult run_approach(Approach approach, const RunContext& ctx, LlmBackend& planner, LlmBackend& translator) {
  return is_interactive(approach) ? run_interactive(approach, ctx, planner, translator)
                                  : run_noninteractive(approach, ctx, planner, translator);
}

}  // namespace nlplan
