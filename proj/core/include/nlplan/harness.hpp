// SPDX-License-Identifier: Apache-2.0
//
// LLM planning harness: few-shot examples, planner prompts, the translator
// (natural language back to PDDL) and the Basic / CoT / Act / ReAct loops.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlplan/engine.hpp"
#include "nlplan/llm.hpp"
#include "nlplan/metrics.hpp"
#include "nlplan/nl_encoding.hpp"
#include "nlplan/pddl.hpp"

namespace nlplan {

struct HarnessConfig {
  std::size_t step_limit = 24;
  std::string goal_marker = "[GOAL REACHED]";
  std::string plan_begin = "[PLAN]";
  std::string plan_end = "[PLAN END]";
  // Seed for sampling the translator's few-shot examples.
  std::uint64_t seed = 0;
  // Interactive runs stop after this many consecutive untranslatable steps;
  // 0 never stops early.
  std::size_t dead_after = 0;
};

// A domain with its templates and natural-language description.
struct PreparedDomain {
  Domain domain;
  Domain detyped;
  TemplateMap templates;
  std::string text;
};

// Throws TemplateError when `templates` does not cover the detyped domain.
PreparedDomain prepare_domain(const Domain& domain, TemplateMap templates);

// A problem in both typed and detyped form, with object names and its
// natural-language description.
struct PreparedProblem {
  Problem problem;
  Problem detyped;
  NamingMap names;
  std::string goal_text;
  std::string objects_text;
  std::string init_text;
};

PreparedProblem prepare_problem(const PreparedDomain& domain, const Problem& problem);

// ---------------------------------------------------------------------------
// Gold plans

struct GoldPlan {
  // "solved", "unsolvable" or "timeout".
  std::string status = "solved";
  std::vector<std::string> actions;
  double seconds = 0.0;

  std::size_t length() const noexcept { return actions.size(); }
  bool solved() const noexcept { return status == "solved"; }
};

using GoldPlanSet = std::map<std::string, GoldPlan>;

GoldPlanSet load_gold_plans(const std::filesystem::path& path);
void save_gold_plans(const std::filesystem::path& path, const GoldPlanSet& plans);

// Parses "(name arg ...)" and grounds it; throws ValidationError.
GroundAction parse_ground_action(const Domain& domain, const Problem& problem, std::string_view text);
std::vector<GroundAction> parse_plan(const Domain& domain, const Problem& problem,
                                     const std::vector<std::string>& actions);

// First solved problem (by name) with optimal length 4 or 5, otherwise the
// shortest solved one, ties by name. Throws HarnessError when none is solved.
std::string select_example_problem(const GoldPlanSet& plans);

// ---------------------------------------------------------------------------
// Few-shot examples

struct ExampleStep {
  std::optional<std::string> thought;
  std::string action;
  std::optional<std::string> observation;
};

struct FewShotExample {
  Approach approach = Approach::kBasic;
  std::string goal_text;
  std::string objects_text;
  std::string init_text;
  std::vector<ExampleStep> steps;
};

// Number of steps kept in CoT and ReAct examples.
inline constexpr std::size_t kShortExampleSteps = 3;

// Steps of the example for `approach`: the whole gold plan for Basic and Act,
// its last three steps for CoT and ReAct.
std::size_t example_step_count(Approach approach, std::size_t plan_length);

// Converts the example problem and its gold plan into a few-shot example.
// `thoughts` must hold one entry per example step for CoT and ReAct and is
// ignored otherwise. Throws HarnessError on an invalid gold plan or a thought
// count mismatch.
FewShotExample build_fewshot(Approach approach, const PreparedDomain& domain, const PreparedProblem& problem,
                             const std::vector<GroundAction>& gold_plan,
                             const std::vector<std::string>& thoughts = {});

// ReAct example whose thoughts are "{THOUGHT 1}", "{THOUGHT 2}", ...
FewShotExample build_thought_skeleton(const PreparedDomain& domain, const PreparedProblem& problem,
                                      const std::vector<GroundAction>& gold_plan);

std::string render_example(const FewShotExample& example, const HarnessConfig& config = {});

// ---------------------------------------------------------------------------
// Thought generation

// A ReAct example with hand-written thoughts, used to prompt for thoughts in
// other domains.
struct ThoughtSeed {
  std::string domain_text;
  FewShotExample skeleton;
  std::vector<std::string> thoughts;
};

// Returns one thought per skeleton step. When the target is the seed itself
// the seed's thoughts are returned without querying the backend. A response
// with the wrong number of thoughts is retried once, then HarnessError.
std::vector<std::string> generate_thoughts(const std::string& domain_text, const FewShotExample& skeleton,
                                           const ThoughtSeed& seed, LlmBackend& llm);

// ---------------------------------------------------------------------------
// Translation

// Synthetic object names for translation examples: "obj_a" ... "obj_z".
const std::vector<std::string>& synthetic_object_pool();

struct TranslationPrompt {
  std::string text;
  std::vector<std::string> example_objects;
};

// Lists every action with its template, up to five sampled NL-to-PDDL
// examples over synthetic objects, and the available objects.
TranslationPrompt build_translation_prompt(const PreparedDomain& domain, const NamingMap& names,
                                           std::uint64_t seed);

struct TranslationResult {
  std::optional<GroundAction> action;
  std::string error;
  std::string request_digest;
  std::string response_digest;
};

// Never throws on bad model output; failures are reported in `error`.
TranslationResult translate_action(const std::string& nl_action, const TranslationPrompt& prompt,
                                   const PreparedDomain& domain, const PreparedProblem& problem,
                                   LlmBackend& translator);

// A responder that answers translation requests by matching the NL action
// against the action templates. Other requests throw LlmError.
MockBackend::Responder make_translation_oracle(const PreparedDomain& domain);

// ---------------------------------------------------------------------------
// Planning runs

inline constexpr std::string_view kUnparsableObservation = "I cannot parse that action.";
inline constexpr std::string_view kFalseGoalObservation = "The goal is not satisfied yet.";

// System prompt of the planner for `approach`.
std::string build_planning_prompt(Approach approach, const PreparedDomain& domain, const FewShotExample& example,
                                  const PreparedProblem& target, const HarnessConfig& config = {});

struct RunContext {
  const PreparedDomain& domain;
  const PreparedProblem& problem;
  const FewShotExample& example;
  const TranslationPrompt& translation;
  std::size_t optimal_length = 0;
  HarnessConfig config;
};

RunResult run_noninteractive(Approach approach, const RunContext& ctx, LlmBackend& planner, LlmBackend& translator);
RunResult run_interactive(Approach approach, const RunContext& ctx, LlmBackend& planner, LlmBackend& translator);
RunResult run_approach(Approach approach, const RunContext& ctx, LlmBackend& planner, LlmBackend& translator);

}  // namespace nlplan
