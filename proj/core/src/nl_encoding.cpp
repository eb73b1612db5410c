// SPDX-License-Identifier: Apache-2.0
#include "nlplan/nl_encoding.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlplan/error.hpp"
#include "nlplan/llm.hpp"

namespace nlplan {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Template

Template Template::parse(std::string_view text) {
  Template t;
  t.text_ = std::string(text);
  std::string literal;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '{') {
      if (c == '}') throw TemplateError("unbalanced '}' in template \"" + t.text_ + "\"");
      literal.push_back(c);
      ++i;
      continue;
    }
    std::size_t close = text.find('}', i + 1);
    if (close == std::string_view::npos) throw TemplateError("unterminated '{' in template \"" + t.text_ + "\"");
    std::string name;
    for (char ch : text.substr(i + 1, close - i - 1)) {
      if (!std::isspace(static_cast<unsigned char>(ch))) {
        name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      }
    }
    if (name.size() < 2 || name.front() != '?') {
      throw TemplateError("malformed placeholder '{" + std::string(text.substr(i + 1, close - i - 1)) +
                          "}' in template \"" + t.text_ + "\"");
    }
    if (!literal.empty()) t.segments_.push_back({false, std::move(literal)});
    literal.clear();
    t.placeholders_.push_back(name);
    t.segments_.push_back({true, std::move(name)});
    i = close + 1;
  }
  if (!literal.empty()) t.segments_.push_back({false, std::move(literal)});
  return t;
}

std::optional<std::string> Template::violation(std::span<const std::string> params) const {
  std::map<std::string, int, std::less<>> counts;
  for (const auto& p : placeholders_) ++counts[p];
  std::vector<std::string> problems;
  for (const auto& p : params) {
    auto it = counts.find(p);
    if (it == counts.end()) {
      problems.push_back("missing placeholder {" + p + "}");
    } else if (it->second > 1) {
      problems.push_back("placeholder {" + p + "} occurs " + std::to_string(it->second) + " times");
    }
  }
  for (const auto& [p, n] : counts) {
    if (std::find(params.begin(), params.end(), p) == params.end()) {
      problems.push_back("unknown placeholder {" + p + "}");
    }
  }
  if (problems.empty()) return std::nullopt;
  std::string msg;
  for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
  return msg;
}

std::string Template::instantiate(const std::map<std::string, std::string, std::less<>>& binding) const {
  std::string out;
  for (const auto& seg : segments_) {
    if (!seg.placeholder) {
      out += seg.text;
      continue;
    }
    auto it = binding.find(seg.text);
    if (it == binding.end()) throw TemplateError("no value for placeholder {" + seg.text + "} in \"" + text_ + "\"");
    out += it->second;
  }
  return out;
}

std::string Template::instantiate(std::span<const std::string> params, std::span<const std::string> args) const {
  if (params.size() != args.size()) throw TemplateError("argument count does not match parameter count");
  std::map<std::string, std::string, std::less<>> binding;
  for (std::size_t i = 0; i < params.size(); ++i) binding[params[i]] = args[i];
  return instantiate(binding);
}

std::optional<std::vector<std::string>> Template::match(std::string_view rendered,
                                                        std::span<const std::string> params) const {
  std::map<std::string, std::string, std::less<>> values;
  // Backtracking over the possible extents of each placeholder.
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t seg, std::size_t pos) -> bool {
    if (seg == segments_.size()) return pos == rendered.size();
    const Segment& s = segments_[seg];
    if (!s.placeholder) {
      if (rendered.substr(pos, s.text.size()) != s.text) return false;
      return rec(seg + 1, pos + s.text.size());
    }
    auto bound = values.find(s.text);
    if (bound != values.end()) {
      if (rendered.substr(pos, bound->second.size()) != bound->second) return false;
      return rec(seg + 1, pos + bound->second.size());
    }
    for (std::size_t end = pos + 1; end <= rendered.size(); ++end) {
      values[s.text] = std::string(rendered.substr(pos, end - pos));
      if (rec(seg + 1, end)) return true;
    }
    values.erase(s.text);
    return false;
  };
  if (!rec(0, 0)) return std::nullopt;
  std::vector<std::string> args;
  for (const auto& p : params) {
    auto it = values.find(p);
    if (it == values.end()) return std::nullopt;
    args.push_back(it->second);
  }
  return args;
}

// ---------------------------------------------------------------------------
// TemplateMap

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kLlm:
      return "llm";
    case Provenance::kManual:
      return "manual";
    case Provenance::kBuiltin:
      return "builtin";
  }
  return "llm";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "llm") return Provenance::kLlm;
  if (s == "manual") return Provenance::kManual;
  if (s == "builtin") return Provenance::kBuiltin;
  throw TemplateError("unknown provenance '" + std::string(s) + "'");
}

std::string TemplateMap::Entry::render(std::span<const std::string> args) const {
  return tmpl.instantiate(params, args);
}

void TemplateMap::set_predicate(const std::string& name, Template t, std::vector<std::string> params,
                                Provenance p) {
  predicates_[name] = Entry{std::move(t), std::move(params), p};
}

void TemplateMap::set_action(const std::string& name, Template t, std::vector<std::string> params,
                             Provenance p) {
  actions_[name] = Entry{std::move(t), std::move(params), p};
}

bool TemplateMap::has_predicate(std::string_view name) const { return predicates_.find(name) != predicates_.end(); }
bool TemplateMap::has_action(std::string_view name) const { return actions_.find(name) != actions_.end(); }

const TemplateMap::Entry& TemplateMap::predicate(std::string_view name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw TemplateError("no template for predicate '" + std::string(name) + "'");
  return it->second;
}

const TemplateMap::Entry& TemplateMap::action(std::string_view name) const {
  auto it = actions_.find(name);
  if (it == actions_.end()) throw TemplateError("no template for action '" + std::string(name) + "'");
  return it->second;
}

namespace {

std::vector<std::string> param_names(const std::vector<TypedName>& params) {
  std::vector<std::string> out;
  for (const auto& p : params) out.push_back(p.name);
  return out;
}

}  // namespace

std::vector<std::string> TemplateMap::missing(const Domain& dom) const {
  std::vector<std::string> out;
  for (const auto& p : dom.predicates) {
    if (!has_predicate(p.name)) out.push_back("predicate " + p.name);
  }
  for (const auto& a : dom.actions) {
    if (!has_action(a.name)) out.push_back("action " + a.name);
  }
  return out;
}

void TemplateMap::require_complete(const Domain& dom) const {
  std::vector<std::string> problems = missing(dom);
  for (auto& p : problems) p = "missing template for " + p;
  auto check = [&](const std::string& kind, const std::string& name, const std::vector<std::string>& params,
                   const auto& entries) {
    auto it = entries.find(name);
    if (it == entries.end()) return;
    if (it->second.params.size() != params.size()) {
      problems.push_back(kind + " " + name + ": template lists " + std::to_string(it->second.params.size()) +
                         " parameters, schema has " + std::to_string(params.size()));
      return;
    }
    if (auto v = it->second.tmpl.violation(it->second.params)) problems.push_back(kind + " " + name + ": " + *v);
  };
  for (const auto& p : dom.predicates) check("predicate", p.name, param_names(p.params), predicates_);
  for (const auto& a : dom.actions) check("action", a.name, param_names(a.params), actions_);
  if (!problems.empty()) {
    std::string msg = "incomplete templates:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw TemplateError(msg);
  }
}

void to_json(json& j, const TemplateMap& map) {
  auto dump = [](const auto& entries) {
    json out = json::object();
    for (const auto& [name, e] : entries) {
      out[name] = {{"template", e.tmpl.text()}, {"params", e.params}, {"provenance", to_string(e.provenance)}};
    }
    return out;
  };
  j = json{{"predicates", dump(map.predicates())}, {"actions", dump(map.actions())}};
}

void from_json(const json& j, TemplateMap& map) {
  map = TemplateMap{};
  const json predicates = j.value("predicates", json::object());
  const json actions = j.value("actions", json::object());
  for (const auto& [name, e] : predicates.items()) {
    map.set_predicate(name, Template::parse(e.at("template").get<std::string>()),
                      e.at("params").get<std::vector<std::string>>(),
                      provenance_from_string(e.value("provenance", "llm")));
  }
  for (const auto& [name, e] : actions.items()) {
    map.set_action(name, Template::parse(e.at("template").get<std::string>()),
                   e.at("params").get<std::vector<std::string>>(),
                   provenance_from_string(e.value("provenance", "llm")));
  }
}

TemplateMap TemplateMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TemplateError("cannot open template file '" + path.string() + "'");
  try {
    return json::parse(in).get<TemplateMap>();
  } catch (const json::exception& ex) {
    throw TemplateError("bad template file '" + path.string() + "': " + ex.what());
  }
}

void TemplateMap::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TemplateError("cannot write template file '" + path.string() + "'");
  out << json(*this).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Object names

NamingMap::NamingMap(std::vector<std::pair<std::string, std::string>> pairs) : pairs_(std::move(pairs)) {
  for (const auto& [pddl, nl] : pairs_) {
    if (!forward_.emplace(pddl, nl).second) throw ValidationError("object '" + pddl + "' named twice");
    if (!backward_.emplace(nl, pddl).second) throw ValidationError("name '" + nl + "' assigned twice");
  }
}

const std::string& NamingMap::nl(std::string_view pddl_name) const {
  auto it = forward_.find(pddl_name);
  if (it == forward_.end()) throw ValidationError("no name for object '" + std::string(pddl_name) + "'");
  return it->second;
}

std::optional<std::string> NamingMap::pddl(std::string_view nl_name) const {
  auto it = backward_.find(nl_name);
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

NamingMap rename_objects(const Problem& prob) {
  const auto objects = prob.all_objects();
  const bool typed = std::any_of(objects.begin(), objects.end(),
                                 [](const TypedName& o) { return o.type != kRootType; });
  std::map<std::string, int> counters;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& o : objects) {
    std::string base = typed ? o.type : std::string(kRootType);
    std::replace(base.begin(), base.end(), '-', '_');
    pairs.emplace_back(o.name, base + "_" + std::to_string(counters[base]++));
  }
  return NamingMap(std::move(pairs));
}

// ---------------------------------------------------------------------------
// Phrases

std::string negate_phrase(std::string_view phrase) {
  static const std::pair<std::string_view, std::string_view> kRewrites[] = {
      {" is ", " is not "}, {" are ", " are not "}, {" am ", " am not "}, {" can ", " cannot "}, {" has ", " does not have "}};
  std::size_t best = std::string_view::npos;
  const std::pair<std::string_view, std::string_view>* rule = nullptr;
  for (const auto& r : kRewrites) {
    std::size_t at = phrase.find(r.first);
    if (at < best) {
      best = at;
      rule = &r;
    }
  }
  if (!rule) return "it is not the case that " + std::string(phrase);
  return std::string(phrase.substr(0, best)) + std::string(rule->second) +
         std::string(phrase.substr(best + rule->first.size()));
}

std::string join_list(std::span<const std::string> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

namespace {

std::vector<std::string> nl_args(const std::vector<std::string>& args, const NamingMap& names) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(names.nl(a));
  return out;
}

}  // namespace

std::string verbalize_atom(const Atom& atom, const TemplateMap& templates, const NamingMap& names) {
  return templates.predicate(atom.predicate).render(nl_args(atom.args, names));
}

std::string verbalize_literal(const GroundLiteral& lit, const TemplateMap& templates, const NamingMap& names) {
  std::string phrase = verbalize_atom(lit.atom, templates, names);
  return lit.positive ? phrase : negate_phrase(phrase);
}

std::string encode_ground_action(const GroundAction& action, const TemplateMap& templates,
                                 const NamingMap& names) {
  return templates.action(action.name).render(nl_args(action.args, names));
}

// ---------------------------------------------------------------------------
// Domain encoding

namespace {

const std::set<std::string, std::less<>> kFunctionWords = {
    "a",    "an",   "the",  "from",  "to",      "in",   "into",    "at",     "on",   "onto", "of",
    "with", "by",   "for",  "off",   "up",      "down", "over",    "under",  "and",  "or",   "is",
    "are",  "be",   "via",  "near",  "between", "out",  "i",       "it",     "its",  "that", "this",
    "same", "all",  "each", "every", "then",    "as",   "towards", "toward", "using", "inside", "than"};

std::string letter(std::size_t i) {
  std::string s(1, static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

std::string article_for(std::string_view noun) {
  char c = static_cast<char>(std::tolower(static_cast<unsigned char>(noun.front())));
  return (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
}

bool is_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

// Renders an action template with capital letters for its parameters. When
// `articles` is set, a placeholder preceded by a noun gets "a"/"an" in front
// of that noun ("drive truck {?t}" -> "drive a truck A"). The first word of
// the template is taken to be the verb and never receives an article.
std::string render_generic(const TemplateMap::Entry& entry, bool articles) {
  std::map<std::string, std::string, std::less<>> letters;
  for (std::size_t i = 0; i < entry.params.size(); ++i) letters[entry.params[i]] = letter(i);

  const auto& segs = entry.tmpl.segments();
  std::vector<std::string> parts;
  std::set<std::string> mentioned;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const auto& seg = segs[k];
    if (!seg.placeholder) {
      parts.push_back(seg.text);
      continue;
    }
    if (articles && mentioned.insert(seg.text).second && k > 0 && !segs[k - 1].placeholder) {
      std::string& prev = parts.back();
      if (!prev.empty() && prev.back() == ' ') {
        std::size_t end = prev.size() - 1;
        std::size_t begin = prev.find_last_of(' ', end - 1);
        begin = begin == std::string::npos ? 0 : begin + 1;
        std::string word = prev.substr(begin, end - begin);
        std::string lower = word;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const bool is_verb = (k - 1 == 0) && begin == 0;
        if (is_word(word) && !is_verb && !kFunctionWords.contains(lower)) {
          prev.insert(begin, article_for(word) + " ");
        }
      }
    }
    auto it = letters.find(seg.text);
    parts.push_back(it == letters.end() ? seg.text : it->second);
  }
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

std::string render_literal_generic(const Literal& lit, const std::map<std::string, std::string>& letters,
                                   const TemplateMap& templates) {
  std::vector<std::string> args;
  for (const auto& a : lit.args) {
    auto it = letters.find(a);
    args.push_back(it == letters.end() ? a : it->second);
  }
  return templates.predicate(lit.predicate).render(args);
}

std::string spaced(std::string name) {
  std::replace(name.begin(), name.end(), '-', ' ');
  std::replace(name.begin(), name.end(), '_', ' ');
  return name;
}

}  // namespace

std::string encode_domain(const Domain& dom, const TemplateMap& templates) {
  std::ostringstream os;
  std::vector<std::string> phrases;
  for (const auto& act : dom.actions) phrases.push_back(render_generic(templates.action(act.name), true));

  os << "I can do the following actions:\n";
  for (const auto& p : phrases) os << "I can " << p << ".\n";

  os << "\nThe actions have the following preconditions:\n";
  for (std::size_t i = 0; i < dom.actions.size(); ++i) {
    const auto& act = dom.actions[i];
    std::map<std::string, std::string> letters;
    for (std::size_t k = 0; k < act.params.size(); ++k) letters[act.params[k].name] = letter(k);
    std::vector<std::string> pos;
    std::vector<std::string> neg;
    for (const auto& lit : act.precondition) {
      std::string phrase = render_literal_generic(lit, letters, templates);
      if (lit.positive) {
        pos.push_back(std::move(phrase));
      } else {
        neg.push_back(negate_phrase(phrase));
      }
    }
    if (!pos.empty()) os << "I can " << phrases[i] << " only if " << join_list(pos) << ".\n";
    if (!neg.empty()) os << "I can " << phrases[i] << " only if " << join_list(neg) << ".\n";
  }

  os << "\nThe actions have the following effects:\n";
  for (std::size_t i = 0; i < dom.actions.size(); ++i) {
    const auto& act = dom.actions[i];
    std::map<std::string, std::string> letters;
    for (std::size_t k = 0; k < act.params.size(); ++k) letters[act.params[k].name] = letter(k);
    std::vector<std::string> adds;
    std::vector<std::string> dels;
    for (const auto& lit : act.add_effects) adds.push_back(render_literal_generic(lit, letters, templates));
    for (const auto& lit : act.del_effects) {
      dels.push_back("it is not the case anymore that " + render_literal_generic(lit, letters, templates));
    }
    if (!adds.empty()) os << "Once I " << phrases[i] << ", " << join_list(adds) << ".\n";
    if (!dels.empty()) os << "Once I " << phrases[i] << ", " << join_list(dels) << ".\n";
  }

  if (dom.typed && !dom.types.empty()) {
    os << "\nThe objects have the following types:\n";
    for (const auto& t : dom.types.types()) {
      const std::string parent = spaced(*dom.types.parent(t));
      os << "Every " << spaced(t) << " is " << article_for(parent) << " " << parent << ".\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Problem encoding

std::string encode_goal(std::span<const Literal> goal, const TemplateMap& templates, const NamingMap& names) {
  if (goal.empty()) return "There are no goal conditions.";
  std::vector<const Literal*> sorted;
  for (const auto& l : goal) sorted.push_back(&l);
  std::sort(sorted.begin(), sorted.end(), [](const Literal* a, const Literal* b) {
    return std::tie(a->predicate, a->args, a->positive) < std::tie(b->predicate, b->args, b->positive);
  });
  std::vector<std::string> phrases;
  for (const Literal* l : sorted) {
    phrases.push_back(verbalize_literal(GroundLiteral{Atom{l->predicate, l->args}, l->positive}, templates, names));
  }
  return "My goal is to reach a state in which " + join_list(phrases) + ".";
}

std::string encode_objects(const Problem& prob, const NamingMap& names) {
  std::vector<std::string> nl;
  for (const auto& o : prob.all_objects()) nl.push_back(names.nl(o.name));
  if (nl.empty()) return "There are no objects.";
  return "The following objects are available: " + join_list(nl) + ".";
}

std::string encode_state(const State& state, const TemplateMap& templates, const NamingMap& names) {
  std::string out;
  for (const auto& atom : state) {
    if (!out.empty()) out += " ";
    out += verbalize_atom(atom, templates, names) + ".";
  }
  return out;
}

std::string encode_problem(const Problem& prob, const TemplateMap& templates, const NamingMap& names,
                           const ProblemEncodingOptions& options) {
  std::vector<std::string> blocks;
  for (ProblemBlock b : options.order) {
    switch (b) {
      case ProblemBlock::kGoal:
        blocks.push_back(encode_goal(prob.goal, templates, names));
        break;
      case ProblemBlock::kObjects:
        blocks.push_back(encode_objects(prob, names));
        break;
      case ProblemBlock::kInit: {
        std::string init = encode_state(State(prob.init), templates, names);
        blocks.push_back(init.empty() ? "Initially, nothing is the case."
                                      : "Initially, the following is the case: " + init);
        break;
      }
    }
  }
  std::string out;
  for (const auto& b : blocks) out += b + "\n";
  return out;
}

}  // namespace nlplan

// ---------------------------------------------------------------------------
// Template generation

namespace nlplan {

namespace {

const char* const kPredicateSystem =
    "You translate PDDL predicates into short English sentence fragments. "
    "Write every parameter as a placeholder in curly brackets, e.g. {?x}. "
    "Each parameter must occur exactly once and no other placeholders may be used. "
    "Answer with the fragment only.";

const char* const kActionSystem =
    "You translate PDDL actions into short English imperative verb phrases. "
    "Write every parameter as a placeholder in curly brackets, e.g. {?x}. "
    "Each parameter must occur exactly once and no other placeholders may be used. "
    "The order of the placeholders does not need to follow the order of the parameters. "
    "Answer with the phrase only.";

const std::pair<const char*, const char*> kPredicateShots[] = {
    {"(on ?x ?y)", "{?x} is on {?y}"},
    {"(clear ?x)", "{?x} is clear"},
    {"(handempty)", "the hand is empty"},
    {"(connected ?from ?to)", "{?from} is connected to {?to}"},
};

const std::pair<const char*, const char*> kActionShots[] = {
    {"action: stack\n"
     "parameters: (?ob ?underob)\n"
     "preconditions of stack: ?underob is clear and ?ob is held\n"
     "effects of stack: it becomes true that the hand is empty and ?ob is clear and ?ob is on ?underob "
     "and it is not the case anymore that ?underob is clear and ?ob is held",
     "stack {?ob} on top of {?underob}"},
    {"action: pick-up\n"
     "parameters: (?ob)\n"
     "preconditions of pick-up: ?ob is clear and ?ob is on the table and the hand is empty\n"
     "effects of pick-up: it becomes true that ?ob is held and it is not the case anymore that ?ob is clear "
     "and ?ob is on the table and the hand is empty",
     "pick up {?ob}"},
    {"action: move\n"
     "parameters: (?to ?from ?robot)\n"
     "preconditions of move: ?robot is a robot and ?robot is at ?from and ?from is connected to ?to\n"
     "effects of move: it becomes true that ?robot is at ?to and it is not the case anymore that ?robot is at "
     "?from",
     "let robot {?robot} move from {?from} to {?to}"},
};

std::string pddl_signature(const std::string& name, const std::vector<TypedName>& params) {
  std::string s = "(" + name;
  for (const auto& p : params) s += " " + p.name;
  return s + ")";
}

// First line, trimmed, without surrounding quotes or a trailing period.
std::string normalize_response(std::string_view raw) {
  std::string_view line = raw.substr(0, raw.find('\n'));
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  line = trim(line);
  if (line.size() >= 2 && (line.front() == '"' || line.front() == '\'') && line.back() == line.front()) {
    line = trim(line.substr(1, line.size() - 2));
  }
  while (!line.empty() && line.back() == '.') line.remove_suffix(1);
  return std::string(trim(line));
}

Template request_template(std::vector<ChatMessage> messages, const std::vector<std::string>& params,
                          const std::string& what, LlmBackend& llm) {
  std::string last_problem;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::string raw = llm.complete(ChatRequest::make(LlmPurpose::kTemplateGeneration, messages, {"\n"}));
    const std::string text = normalize_response(raw);
    std::optional<std::string> problem;
    Template t;
    try {
      t = Template::parse(text);
      problem = t.violation(params);
    } catch (const TemplateError& ex) {
      problem = ex.what();
    }
    if (text.empty()) problem = "the answer is empty";
    if (!problem) return t;
    last_problem = *problem;
    messages.push_back({ChatRole::kAssistant, raw});
    std::string expected;
    for (const auto& p : params) expected += (expected.empty() ? "" : ", ") + ("{" + p + "}");
    messages.push_back({ChatRole::kUser, "The answer is invalid: " + *problem + ". Use each of the placeholders " +
                                             (expected.empty() ? std::string("(none)") : expected) +
                                             " exactly once and answer again."});
  }
  throw TemplateError("could not obtain a valid template for " + what + ": " + last_problem);
}

}  // namespace

std::string describe_action_for_template(const ActionSchema& action, const TemplateMap& predicates) {
  auto phrase = [&](const Literal& lit) {
    return predicates.predicate(lit.predicate).render(lit.args);
  };
  std::vector<std::string> pre;
  for (const auto& lit : action.precondition) {
    pre.push_back(lit.positive ? phrase(lit) : negate_phrase(phrase(lit)));
  }
  std::vector<std::string> adds;
  std::vector<std::string> dels;
  for (const auto& lit : action.add_effects) adds.push_back(phrase(lit));
  for (const auto& lit : action.del_effects) dels.push_back(phrase(lit));

  auto and_join = [](const std::vector<std::string>& items) {
    std::string out;
    for (const auto& i : items) out += (out.empty() ? "" : " and ") + i;
    return out;
  };
  std::string params = "(";
  for (std::size_t i = 0; i < action.params.size(); ++i) params += (i ? " " : "") + action.params[i].name;
  params += ")";

  std::string effects;
  if (!adds.empty()) effects = "it becomes true that " + and_join(adds);
  if (!dels.empty()) {
    effects += (effects.empty() ? "" : " and ") + std::string("it is not the case anymore that ") + and_join(dels);
  }
  return "action: " + action.name + "\nparameters: " + params + "\npreconditions of " + action.name + ": " +
         (pre.empty() ? std::string("none") : and_join(pre)) + "\neffects of " + action.name + ": " +
         (effects.empty() ? std::string("none") : effects);
}

Template generate_predicate_template(const PredicateSchema& predicate, LlmBackend& llm) {
  std::vector<ChatMessage> messages{{ChatRole::kSystem, kPredicateSystem}};
  for (const auto& [in, out] : kPredicateShots) {
    messages.push_back({ChatRole::kUser, in});
    messages.push_back({ChatRole::kAssistant, out});
  }
  messages.push_back({ChatRole::kUser, pddl_signature(predicate.name, predicate.params)});
  return request_template(std::move(messages), param_names(predicate.params), "predicate " + predicate.name, llm);
}

Template generate_action_template(const ActionSchema& action, const TemplateMap& predicates, LlmBackend& llm) {
  std::vector<ChatMessage> messages{{ChatRole::kSystem, kActionSystem}};
  for (const auto& [in, out] : kActionShots) {
    messages.push_back({ChatRole::kUser, in});
    messages.push_back({ChatRole::kAssistant, out});
  }
  messages.push_back({ChatRole::kUser, describe_action_for_template(action, predicates)});
  return request_template(std::move(messages), param_names(action.params), "action " + action.name, llm);
}

TemplateMap generate_templates(const Domain& detyped_domain, LlmBackend& llm, TemplateMap existing) {
  for (const auto& p : detyped_domain.predicates) {
    if (existing.has_predicate(p.name)) continue;
    existing.set_predicate(p.name, generate_predicate_template(p, llm), param_names(p.params), Provenance::kLlm);
  }
  for (const auto& a : detyped_domain.actions) {
    if (existing.has_action(a.name)) continue;
    existing.set_action(a.name, generate_action_template(a, existing, llm), param_names(a.params),
                        Provenance::kLlm);
  }
  return existing;
}

}  // namespace nlplan
