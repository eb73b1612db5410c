// SPDX-License-Identifier: Apache-2.0
#include "nlplan/pddl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "nlplan/error.hpp"
#include "sexpr.hpp"

namespace nlplan {

using detail::SExpr;

// ---------------------------------------------------------------------------
// TypeHierarchy

void TypeHierarchy::declare(const std::string& type, const std::string& parent) {
  if (type == kRootType) {
    if (parent != kRootType) throw ValidationError("type 'object' cannot have a parent");
    return;
  }
  if (type == parent) throw ValidationError("type '" + type + "' cannot be its own parent");
  if (parent != kRootType && !contains(parent)) {
    order_.push_back(parent);
    parents_[parent] = std::string(kRootType);
  }
  // Reject cycles: `type` must not already be an ancestor of `parent`.
  for (const auto& ancestor : path_to_root(parent)) {
    if (ancestor == type) throw ValidationError("cyclic type hierarchy through '" + type + "'");
  }
  auto it = parents_.find(type);
  if (it == parents_.end()) {
    order_.push_back(type);
    parents_.emplace(type, parent);
  } else {
    it->second = parent;
  }
  // Stable reorder so that every type follows its parent.
  std::vector<std::string> sorted;
  std::set<std::string, std::less<>> placed{std::string(kRootType)};
  while (sorted.size() < order_.size()) {
    for (const auto& t : order_) {
      if (!placed.count(t) && placed.count(parents_.at(t))) {
        sorted.push_back(t);
        placed.insert(t);
        break;
      }
    }
  }
  order_ = std::move(sorted);
}

bool TypeHierarchy::contains(std::string_view type) const {
  return type == kRootType || parents_.find(type) != parents_.end();
}

std::optional<std::string> TypeHierarchy::parent(std::string_view type) const {
  auto it = parents_.find(type);
  if (it == parents_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> TypeHierarchy::path_to_root(std::string_view type) const {
  std::vector<std::string> path{std::string(type)};
  auto current = parent(type);
  while (current) {
    path.push_back(*current);
    current = parent(*current);
  }
  if (path.back() != kRootType) path.emplace_back(kRootType);
  return path;
}

bool TypeHierarchy::is_subtype(std::string_view sub, std::string_view super) const {
  if (super == kRootType) return true;
  for (const auto& t : path_to_root(sub)) {
    if (t == super) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lookups

const PredicateSchema* Domain::find_predicate(std::string_view n) const {
  for (const auto& p : predicates) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

const ActionSchema* Domain::find_action(std::string_view n) const {
  for (const auto& a : actions) {
    if (a.name == n) return &a;
  }
  return nullptr;
}

std::vector<TypedName> Problem::all_objects() const {
  std::vector<TypedName> all = constants;
  all.insert(all.end(), objects.begin(), objects.end());
  return all;
}

const TypedName* Problem::find_object(std::string_view n) const {
  for (const auto& o : constants) {
    if (o.name == n) return &o;
  }
  for (const auto& o : objects) {
    if (o.name == n) return &o;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const std::set<std::string, std::less<>> kSupportedRequirements = {
    ":strips", ":typing", ":negative-preconditions"};

// Heads that mark constructs outside the fragment.
const std::set<std::string, std::less<>> kUnsupportedHeads = {
    "or",     "forall", "exists",   "imply",      "when",   "=",     "increase",
    "decrease", "assign", "scale-up", "scale-down", "either", "preference"};

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

[[noreturn]] void unsupported(const SExpr& at, const std::string& construct) {
  throw UnsupportedFeatureError(construct, at.line, at.column);
}

const SExpr& expect_list(const SExpr& e, std::string_view what) {
  if (!e.is_list) fail(e, "expected " + std::string(what));
  return e;
}

const std::string& expect_symbol(const SExpr& e, std::string_view what) {
  if (!e.is_symbol() || e.symbol.empty()) fail(e, "expected " + std::string(what));
  return e.symbol;
}

bool is_variable(std::string_view s) { return !s.empty() && s.front() == '?'; }

// `a b - t c - u d` -> [(a,t),(b,t),(c,u),(d,object)]
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t begin,
                                        bool variables) {
  std::vector<TypedName> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr& item = items[i];
    if (item.is_list) {
      if (item.has_head("either")) unsupported(item, "either");
      fail(item, "unexpected list in typed list");
    }
    if (item.symbol == "-") {
      if (pending.empty()) fail(item, "'-' without preceding names");
      if (i + 1 >= items.size()) fail(item, "missing type after '-'");
      const SExpr& type = items[++i];
      if (type.has_head("either")) unsupported(type, "either");
      const std::string& type_name = expect_symbol(type, "type name");
      for (auto& name : pending) out.push_back({std::move(name), type_name});
      pending.clear();
      continue;
    }
    if (variables != is_variable(item.symbol)) {
      fail(item, variables ? "expected variable, got '" + item.symbol + "'"
                           : "expected name, got variable '" + item.symbol + "'");
    }
    pending.push_back(item.symbol);
  }
  for (auto& name : pending) out.push_back({std::move(name), std::string(kRootType)});
  return out;
}

void check_unique(const std::vector<TypedName>& names, const SExpr& at, std::string_view what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n.name).second) fail(at, "duplicate " + std::string(what) + " '" + n.name + "'");
  }
}

Literal parse_atom(const SExpr& e) {
  expect_list(e, "atom");
  if (e.items.empty()) fail(e, "empty atom");
  const SExpr& head = e.items.front();
  if (head.is_list) fail(head, "expected predicate name");
  if (kUnsupportedHeads.contains(head.symbol)) unsupported(head, head.symbol);
  Literal lit;
  lit.predicate = expect_symbol(head, "predicate name");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& arg = e.items[i];
    if (arg.is_list) fail(arg, "nested term in atom (functions are not supported)");
    lit.args.push_back(arg.symbol);
  }
  return lit;
}

Literal parse_literal(const SExpr& e) {
  if (e.has_head("not")) {
    if (e.items.size() != 2) fail(e, "'not' takes exactly one argument");
    const SExpr& inner = e.items[1];
    if (inner.has_head("not")) fail(inner, "double negation");
    Literal lit = parse_atom(inner);
    lit.positive = false;
    return lit;
  }
  return parse_atom(e);
}

// Flattens nested conjunctions. `()` and `(and)` are the empty conjunction.
void parse_conjunction(const SExpr& e, std::vector<Literal>& out) {
  expect_list(e, "formula");
  if (e.items.empty()) return;
  if (e.has_head("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) parse_conjunction(e.items[i], out);
    return;
  }
  out.push_back(parse_literal(e));
}

void check_literal(const Literal& lit, const Domain& dom, const std::set<std::string>& vars,
                   const SExpr& at) {
  const PredicateSchema* pred = dom.find_predicate(lit.predicate);
  if (!pred) fail(at, "unknown predicate '" + lit.predicate + "'");
  if (pred->arity() != lit.args.size()) {
    fail(at, "predicate '" + lit.predicate + "' expects " + std::to_string(pred->arity()) +
                 " arguments, got " + std::to_string(lit.args.size()));
  }
  for (const auto& arg : lit.args) {
    if (is_variable(arg)) {
      if (!vars.contains(arg)) fail(at, "unbound variable '" + arg + "' in '" + lit.predicate + "'");
    } else {
      bool is_constant = std::any_of(dom.constants.begin(), dom.constants.end(),
                                     [&](const TypedName& c) { return c.name == arg; });
      if (!is_constant) fail(at, "unknown constant '" + arg + "'");
    }
  }
}

ActionSchema parse_action(const SExpr& e, const Domain& dom) {
  if (e.items.size() < 2) fail(e, "action without a name");
  ActionSchema act;
  act.name = expect_symbol(e.items[1], "action name");
  const SExpr* precondition = nullptr;
  const SExpr* effect = nullptr;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& key = e.items[i];
    const std::string& k = expect_symbol(key, "action keyword");
    if (i + 1 >= e.items.size()) fail(key, "missing value for " + k);
    const SExpr& value = e.items[++i];
    if (k == ":parameters") {
      act.params = parse_typed_list(expect_list(value, "parameter list").items, 0, true);
      check_unique(act.params, value, "parameter");
    } else if (k == ":precondition") {
      precondition = &value;
    } else if (k == ":effect") {
      effect = &value;
    } else {
      unsupported(key, k);
    }
  }
  std::set<std::string> vars;
  for (const auto& p : act.params) {
    if (!dom.types.contains(p.type)) fail(e, "unknown type '" + p.type + "'");
    if (!dom.typed && p.type != kRootType) fail(e, "typed parameter in a domain without :typing");
    vars.insert(p.name);
  }
  if (precondition) {
    parse_conjunction(*precondition, act.precondition);
    for (const auto& lit : act.precondition) check_literal(lit, dom, vars, *precondition);
  }
  if (effect) {
    std::vector<Literal> effects;
    parse_conjunction(*effect, effects);
    for (auto& lit : effects) {
      check_literal(lit, dom, vars, *effect);
      if (lit.positive) {
        act.add_effects.push_back(std::move(lit));
      } else {
        lit.positive = true;
        act.del_effects.push_back(std::move(lit));
      }
    }
  }
  return act;
}

std::string expect_define(const SExpr& root, std::string_view kind) {
  if (!root.has_head("define")) fail(root, "expected (define ...)");
  if (root.items.size() < 2 || !root.items[1].has_head(kind) || root.items[1].items.size() != 2) {
    fail(root, "expected (" + std::string(kind) + " <name>)");
  }
  return expect_symbol(root.items[1].items[1], std::string(kind) + " name");
}

void check_requirements(const SExpr& section, std::vector<std::string>& out) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const std::string& r = expect_symbol(section.items[i], "requirement");
    if (!kSupportedRequirements.contains(r)) unsupported(section.items[i], r);
    out.push_back(r);
  }
}

}  // namespace

Domain parse_domain(std::string_view text) {
  SExpr root = detail::read_sexpr(text);
  Domain dom;
  dom.name = expect_define(root, "domain");

  // Sections are processed in dependency order regardless of source order.
  const SExpr* types = nullptr;
  const SExpr* constants = nullptr;
  const SExpr* predicates = nullptr;
  std::vector<const SExpr*> actions;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = expect_list(root.items[i], "domain section");
    if (section.items.empty()) fail(section, "empty section");
    const std::string& key = expect_symbol(section.items.front(), "section keyword");
    if (key == ":requirements") {
      check_requirements(section, dom.requirements);
    } else if (key == ":types") {
      types = &section;
    } else if (key == ":constants") {
      constants = &section;
    } else if (key == ":predicates") {
      predicates = &section;
    } else if (key == ":action") {
      actions.push_back(&section);
    } else {
      unsupported(section.items.front(), key);
    }
  }

  dom.typed = std::find(dom.requirements.begin(), dom.requirements.end(), ":typing") !=
              dom.requirements.end();
  if (types) {
    if (!dom.typed) fail(*types, ":types section requires :typing");
    try {
      for (const auto& t : parse_typed_list(types->items, 1, false)) dom.types.declare(t.name, t.type);
    } catch (const ValidationError& ex) {
      fail(*types, ex.what());
    }
  }
  if (constants) {
    dom.constants = parse_typed_list(constants->items, 1, false);
    check_unique(dom.constants, *constants, "constant");
    for (const auto& c : dom.constants) {
      if (!dom.types.contains(c.type)) fail(*constants, "unknown type '" + c.type + "'");
    }
  }
  if (predicates) {
    std::set<std::string> names;
    for (std::size_t i = 1; i < predicates->items.size(); ++i) {
      const SExpr& p = expect_list(predicates->items[i], "predicate declaration");
      if (p.items.empty()) fail(p, "empty predicate declaration");
      PredicateSchema schema;
      schema.name = expect_symbol(p.items.front(), "predicate name");
      if (schema.name == "=") unsupported(p.items.front(), "=");
      schema.params = parse_typed_list(p.items, 1, true);
      check_unique(schema.params, p, "parameter");
      for (const auto& param : schema.params) {
        if (!dom.types.contains(param.type)) fail(p, "unknown type '" + param.type + "'");
      }
      if (!names.insert(schema.name).second) fail(p, "duplicate predicate '" + schema.name + "'");
      dom.predicates.push_back(std::move(schema));
    }
  }
  std::set<std::string> action_names;
  for (const SExpr* a : actions) {
    ActionSchema act = parse_action(*a, dom);
    if (!action_names.insert(act.name).second) fail(*a, "duplicate action '" + act.name + "'");
    dom.actions.push_back(std::move(act));
  }
  return dom;
}

namespace {

void check_ground(const Literal& lit, const Domain& dom, const Problem& prob, const SExpr& at) {
  const PredicateSchema* pred = dom.find_predicate(lit.predicate);
  if (!pred) fail(at, "unknown predicate '" + lit.predicate + "'");
  if (pred->arity() != lit.args.size()) {
    fail(at, "predicate '" + lit.predicate + "' expects " + std::to_string(pred->arity()) +
                 " arguments, got " + std::to_string(lit.args.size()));
  }
  for (const auto& arg : lit.args) {
    if (!prob.find_object(arg)) fail(at, "unknown object '" + arg + "'");
  }
}

}  // namespace

Problem parse_problem(std::string_view text, const Domain& dom) {
  SExpr root = detail::read_sexpr(text);
  Problem prob;
  prob.name = expect_define(root, "problem");
  prob.constants = dom.constants;

  const SExpr* init = nullptr;
  const SExpr* goal = nullptr;
  const SExpr* objects = nullptr;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = expect_list(root.items[i], "problem section");
    if (section.items.empty()) fail(section, "empty section");
    const std::string& key = expect_symbol(section.items.front(), "section keyword");
    if (key == ":domain") {
      if (section.items.size() != 2) fail(section, "expected (:domain <name>)");
      prob.domain_name = expect_symbol(section.items[1], "domain name");
      if (prob.domain_name != dom.name) {
        fail(section, "problem is for domain '" + prob.domain_name + "', not '" + dom.name + "'");
      }
    } else if (key == ":requirements") {
      std::vector<std::string> ignored;
      check_requirements(section, ignored);
    } else if (key == ":objects") {
      objects = &section;
    } else if (key == ":init") {
      init = &section;
    } else if (key == ":goal") {
      goal = &section;
    } else {
      unsupported(section.items.front(), key);
    }
  }
  if (prob.domain_name.empty()) fail(root, "missing (:domain ...)");

  if (objects) {
    for (auto& o : parse_typed_list(objects->items, 1, false)) {
      if (!dom.types.contains(o.type)) fail(*objects, "unknown type '" + o.type + "'");
      if (!dom.typed && o.type != kRootType) fail(*objects, "typed object in an untyped domain");
      // Constants redeclared as objects are kept once, as constants.
      if (std::any_of(prob.constants.begin(), prob.constants.end(),
                      [&](const TypedName& c) { return c.name == o.name; })) {
        continue;
      }
      prob.objects.push_back(std::move(o));
    }
    check_unique(prob.objects, *objects, "object");
  }
  if (init) {
    std::set<Atom> atoms;
    for (std::size_t i = 1; i < init->items.size(); ++i) {
      const SExpr& item = init->items[i];
      if (item.has_head("not")) fail(item, "negative literal in :init");
      Literal lit = parse_atom(item);
      check_ground(lit, dom, prob, item);
      atoms.insert(Atom{std::move(lit.predicate), std::move(lit.args)});
    }
    prob.init.assign(atoms.begin(), atoms.end());
  }
  if (goal) {
    if (goal->items.size() != 2) fail(*goal, "expected (:goal <formula>)");
    parse_conjunction(goal->items[1], prob.goal);
    for (const auto& lit : prob.goal) check_ground(lit, dom, prob, *goal);
  }
  return prob;
}

// ---------------------------------------------------------------------------
// Detyping

Domain detype(const Domain& dom) {
  if (!dom.typed) return dom;
  Domain out = dom;
  out.typed = false;
  out.types = TypeHierarchy{};
  out.requirements.erase(std::remove(out.requirements.begin(), out.requirements.end(), ":typing"),
                         out.requirements.end());

  std::vector<std::string> all_types{std::string(kRootType)};
  for (const auto& t : dom.types.types()) all_types.push_back(t);
  std::vector<PredicateSchema> type_predicates;
  for (const auto& t : all_types) {
    if (dom.find_predicate(t)) {
      throw ValidationError("type '" + t + "' collides with a predicate of the same name");
    }
    type_predicates.push_back(PredicateSchema{t, {TypedName{"?" + t, std::string(kRootType)}}});
  }
  out.predicates = std::move(type_predicates);
  for (auto p : dom.predicates) {
    for (auto& param : p.params) param.type = kRootType;
    out.predicates.push_back(std::move(p));
  }
  for (auto& c : out.constants) c.type = kRootType;

  for (auto& act : out.actions) {
    std::vector<Literal> typed_pre;
    for (auto& param : act.params) {
      typed_pre.push_back(Literal{param.type, {param.name}, true});
      param.type = kRootType;
    }
    typed_pre.insert(typed_pre.end(), act.precondition.begin(), act.precondition.end());
    act.precondition = std::move(typed_pre);
  }
  return out;
}

Problem detype(const Domain& dom, const Problem& prob) {
  if (!dom.typed) return prob;
  Problem out = prob;
  std::set<Atom> init(prob.init.begin(), prob.init.end());
  auto lower = [&](std::vector<TypedName>& objs) {
    for (auto& o : objs) {
      for (const auto& t : dom.types.path_to_root(o.type)) init.insert(Atom{t, {o.name}});
      o.type = kRootType;
    }
  };
  lower(out.constants);
  lower(out.objects);
  out.init.assign(init.begin(), init.end());
  return out;
}

std::pair<Domain, Problem> detype_task(const Domain& dom, const Problem& prob) {
  return {detype(dom), detype(dom, prob)};
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_string(const Atom& atom) {
  std::string s = "(" + atom.predicate;
  for (const auto& a : atom.args) s += " " + a;
  return s + ")";
}

std::string to_string(const Literal& lit) {
  std::string s = "(" + lit.predicate;
  for (const auto& a : lit.args) s += " " + a;
  s += ")";
  return lit.positive ? s : "(not " + s + ")";
}

namespace {

std::string typed_list(const std::vector<TypedName>& names, bool typed) {
  std::string s;
  for (const auto& n : names) {
    if (!s.empty()) s += " ";
    s += n.name;
    if (typed) s += " - " + n.type;
  }
  return s;
}

void write_conjunction(std::ostringstream& os, std::string_view indent,
                       const std::vector<std::string>& literals) {
  if (literals.empty()) {
    os << "(and)\n";
    return;
  }
  os << "(and\n";
  for (const auto& l : literals) os << indent << "  " << l << "\n";
  os << indent << ")\n";
}

}  // namespace

std::string to_pddl(const Domain& dom) {
  std::ostringstream os;
  os << "(define (domain " << dom.name << ")\n";
  if (!dom.requirements.empty()) {
    os << "  (:requirements";
    for (const auto& r : dom.requirements) os << " " << r;
    os << ")\n";
  }
  if (dom.typed && !dom.types.empty()) {
    os << "  (:types\n";
    for (const auto& t : dom.types.types()) os << "    " << t << " - " << *dom.types.parent(t) << "\n";
    os << "  )\n";
  }
  if (!dom.constants.empty()) {
    os << "  (:constants " << typed_list(dom.constants, dom.typed) << ")\n";
  }
  os << "  (:predicates\n";
  for (const auto& p : dom.predicates) {
    os << "    (" << p.name;
    if (!p.params.empty()) os << " " << typed_list(p.params, dom.typed);
    os << ")\n";
  }
  os << "  )\n";
  for (const auto& a : dom.actions) {
    os << "  (:action " << a.name << "\n";
    os << "    :parameters (" << typed_list(a.params, dom.typed) << ")\n";
    std::vector<std::string> pre;
    for (const auto& l : a.precondition) pre.push_back(to_string(l));
    os << "    :precondition ";
    write_conjunction(os, "    ", pre);
    std::vector<std::string> eff;
    for (const auto& l : a.add_effects) eff.push_back(to_string(l));
    for (const auto& l : a.del_effects) eff.push_back("(not " + to_string(l) + ")");
    os << "    :effect ";
    write_conjunction(os, "    ", eff);
    os << "  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string to_pddl(const Problem& prob) {
  std::ostringstream os;
  bool typed = std::any_of(prob.objects.begin(), prob.objects.end(),
                           [](const TypedName& o) { return o.type != kRootType; });
  os << "(define (problem " << prob.name << ")\n";
  os << "  (:domain " << prob.domain_name << ")\n";
  os << "  (:objects";
  if (!prob.objects.empty()) os << " " << typed_list(prob.objects, typed);
  os << ")\n";
  os << "  (:init\n";
  for (const auto& a : prob.init) os << "    " << to_string(a) << "\n";
  os << "  )\n";
  std::vector<std::string> goal;
  for (const auto& l : prob.goal) goal.push_back(to_string(l));
  os << "  (:goal ";
  write_conjunction(os, "  ", goal);
  os << "  )\n";
  os << ")\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nlplan
