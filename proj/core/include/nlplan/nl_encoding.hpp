// SPDX-License-Identifier: Apache-2.0
//
// PDDL-to-English mappings. Predicates and actions are verbalised through
// templates whose `{?var}` placeholders name schema parameters; domain and
// problem descriptions are composed from those templates by fixed rules.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlplan/engine.hpp"
#include "nlplan/pddl.hpp"

namespace nlplan {

class LlmBackend;

class Template {
 public:
  Template() = default;
  // Throws TemplateError on an unterminated or empty `{...}`.
  static Template parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  // Placeholder names (with the leading `?`) in order of appearance.
  const std::vector<std::string>& placeholders() const noexcept { return placeholders_; }

  // Describes why the placeholders are not a bijection onto `params`, or
  // nullopt when they are.
  std::optional<std::string> violation(std::span<const std::string> params) const;

  // Replaces each placeholder by the value bound to its parameter name.
  std::string instantiate(const std::map<std::string, std::string, std::less<>>& binding) const;
  std::string instantiate(std::span<const std::string> params, std::span<const std::string> args) const;
  // Inverse of instantiate: recovers the argument tuple (in `params` order)
  // from a rendered string, or nullopt if the text does not fit the template.
  std::optional<std::vector<std::string>> match(std::string_view rendered,
                                                std::span<const std::string> params) const;

  friend bool operator==(const Template& a, const Template& b) { return a.text_ == b.text_; }

  struct Segment {
    bool placeholder = false;
    // Literal text, or the placeholder name with its `?`.
    std::string text;
  };
  const std::vector<Segment>& segments() const noexcept { return segments_; }

 private:
  std::string text_;
  std::vector<std::string> placeholders_;
  std::vector<Segment> segments_;
};

enum class Provenance { kLlm, kManual, kBuiltin };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

class TemplateMap {
 public:
  struct Entry {
    Template tmpl;
    // Schema parameter names in declaration order.
    std::vector<std::string> params;
    Provenance provenance = Provenance::kLlm;

    // Binds `args` positionally to `params` and instantiates the template.
    std::string render(std::span<const std::string> args) const;
  };

  void set_predicate(const std::string& name, Template t, std::vector<std::string> params,
                     Provenance p = Provenance::kLlm);
  void set_action(const std::string& name, Template t, std::vector<std::string> params,
                  Provenance p = Provenance::kLlm);

  bool has_predicate(std::string_view name) const;
  bool has_action(std::string_view name) const;
  // Throw TemplateError when missing.
  const Entry& predicate(std::string_view name) const;
  const Entry& action(std::string_view name) const;

  const std::map<std::string, Entry, std::less<>>& predicates() const noexcept { return predicates_; }
  const std::map<std::string, Entry, std::less<>>& actions() const noexcept { return actions_; }

  // Names lacking a template, as "predicate <name>" / "action <name>".
  std::vector<std::string> missing(const Domain& domain) const;
  // Throws TemplateError listing every missing or ill-formed entry.
  void require_complete(const Domain& domain) const;

  static TemplateMap load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, Entry, std::less<>> predicates_;
  std::map<std::string, Entry, std::less<>> actions_;
};

void to_json(nlohmann::json& j, const TemplateMap& map);
void from_json(const nlohmann::json& j, TemplateMap& map);

// PDDL object name <-> natural-language name.
class NamingMap {
 public:
  NamingMap() = default;
  // Throws ValidationError if the mapping is not injective.
  explicit NamingMap(std::vector<std::pair<std::string, std::string>> pairs);

  const std::string& nl(std::string_view pddl_name) const;
  std::optional<std::string> pddl(std::string_view nl_name) const;
  const std::vector<std::pair<std::string, std::string>>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::string, std::less<>> forward_;
  std::map<std::string, std::string, std::less<>> backward_;
};

// `<type>_<i>` per most specific type, counting from 0 in declaration order;
// `object_<i>` when the problem is untyped.
NamingMap rename_objects(const Problem& problem);

// Turns "x is at y" into "x is not at y"; falls back to
// "it is not the case that ...".
std::string negate_phrase(std::string_view phrase);

// Joins with ", " and a final " and ".
std::string join_list(std::span<const std::string> items);

std::string verbalize_atom(const Atom& atom, const TemplateMap& templates, const NamingMap& names);
std::string verbalize_literal(const GroundLiteral& literal, const TemplateMap& templates,
                              const NamingMap& names);

std::string encode_ground_action(const GroundAction& action, const TemplateMap& templates,
                                 const NamingMap& names);

// Available actions, their preconditions, their effects and, for typed
// domains, the type hierarchy. Parameters are written as capital letters and
// get an indefinite article on first mention.
std::string encode_domain(const Domain& domain, const TemplateMap& templates);

enum class ProblemBlock { kGoal, kObjects, kInit };

struct ProblemEncodingOptions {
  std::vector<ProblemBlock> order{ProblemBlock::kGoal, ProblemBlock::kObjects, ProblemBlock::kInit};
};

std::string encode_goal(std::span<const Literal> goal, const TemplateMap& templates, const NamingMap& names);
std::string encode_objects(const Problem& problem, const NamingMap& names);
// One sentence per atom, in atom order.
std::string encode_state(const State& state, const TemplateMap& templates, const NamingMap& names);
std::string encode_problem(const Problem& problem, const TemplateMap& templates, const NamingMap& names,
                           const ProblemEncodingOptions& options = {});

// ---------------------------------------------------------------------------
// LLM-assisted template generation

// The request text used for an action: name, parameter list, and the
// verbalised preconditions and effects.
std::string describe_action_for_template(const ActionSchema& action, const TemplateMap& predicates);

// Each call validates the response and retries once with the violation
// spelled out before giving up with TemplateError.
Template generate_predicate_template(const PredicateSchema& predicate, LlmBackend& llm);
Template generate_action_template(const ActionSchema& action, const TemplateMap& predicates,
                                  LlmBackend& llm);

// Fills in every template `existing` lacks for the (detyped) domain.
TemplateMap generate_templates(const Domain& detyped_domain, LlmBackend& llm, TemplateMap existing = {});

}  // namespace nlplan
