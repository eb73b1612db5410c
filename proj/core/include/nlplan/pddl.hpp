// SPDX-License-Identifier: Apache-2.0
//
// Abstract syntax for the typed STRIPS fragment of PDDL: conjunctive
// preconditions with negated literals, add/delete effects, a single-parent
// type hierarchy, and conjunctive goals. Identifiers are lowercased at parse
// time, so every name stored here is lowercase.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nlplan {

inline constexpr std::string_view kRootType = "object";

// A variable or object name together with its declared type.
struct TypedName {
  std::string name;
  std::string type{kRootType};

  friend bool operator==(const TypedName&, const TypedName&) = default;
};

// Single-inheritance type tree rooted at `object`.
class TypeHierarchy {
 public:
  TypeHierarchy() = default;

  // Declares `type` as a direct subtype of `parent`. Unknown parents are
  // introduced implicitly below `object`. Throws ValidationError on cycles or
  // conflicting redeclarations.
  void declare(const std::string& type, const std::string& parent = std::string(kRootType));

  bool contains(std::string_view type) const;
  // Parent of a non-root type; nullopt for `object` and unknown types.
  std::optional<std::string> parent(std::string_view type) const;
  // `type`, its parent, ..., `object`.
  std::vector<std::string> path_to_root(std::string_view type) const;
  bool is_subtype(std::string_view sub, std::string_view super) const;

  // Non-root types, each after its parent, otherwise in declaration order.
  const std::vector<std::string>& types() const noexcept { return order_; }
  bool empty() const noexcept { return order_.empty(); }

  friend bool operator==(const TypeHierarchy&, const TypeHierarchy&) = default;

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::string, std::less<>> parents_;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedName> params;

  std::size_t arity() const noexcept { return params.size(); }
  friend bool operator==(const PredicateSchema&, const PredicateSchema&) = default;
};

// A possibly negated atom. Arguments are variables (`?x`) inside schemas and
// object names once grounded.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Ground atom, ordered lexicographically by (predicate, args).
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Literal> precondition;
  std::vector<Literal> add_effects;
  // Stored unnegated.
  std::vector<Literal> del_effects;

  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;
  TypeHierarchy types;
  std::vector<TypedName> constants;
  std::vector<PredicateSchema> predicates;
  std::vector<ActionSchema> actions;
  bool typed = false;

  const PredicateSchema* find_predicate(std::string_view name) const;
  const ActionSchema* find_action(std::string_view name) const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Problem {
  std::string name;
  std::string domain_name;
  // Domain constants, copied in at parse time. Not re-emitted by the serializer.
  std::vector<TypedName> constants;
  std::vector<TypedName> objects;
  // Sorted, duplicate free.
  std::vector<Atom> init;
  std::vector<Literal> goal;

  // Constants followed by declared objects.
  std::vector<TypedName> all_objects() const;
  const TypedName* find_object(std::string_view name) const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text, const Domain& domain);

// Compiles types into unary predicates. Every action gains one positive type
// precondition per parameter (prepended, in parameter order), every object
// gains one type atom per type on its path to the root, and all declared
// types collapse to `object`. Untyped inputs are returned unchanged.
Domain detype(const Domain& domain);
Problem detype(const Domain& domain, const Problem& problem);
std::pair<Domain, Problem> detype_task(const Domain& domain, const Problem& problem);

// Canonical PDDL text: 2-space indentation, one literal per line inside `and`.
std::string to_pddl(const Domain& domain);
std::string to_pddl(const Problem& problem);

std::string to_string(const Atom& atom);
std::string to_string(const Literal& literal);

// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace nlplan
