// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "nlplan/engine.hpp"
#include "nlplan/error.hpp"
#include "nlplan/pddl.hpp"
#include "nlplan/search.hpp"
#include "support.hpp"

using namespace nlplan;

namespace {

const char* const kMiniTyped = R"(
(define (domain mini)
  (:requirements :strips :typing)
  (:types truck - vehicle vehicle place - object)
  (:predicates (at ?v - vehicle ?p - place) (road ?a ?b - place))
  (:action drive
    :parameters (?v - truck ?from ?to - place)
    :precondition (and (at ?v ?from) (road ?from ?to))
    :effect (and (at ?v ?to) (not (at ?v ?from)))))
)";

const char* const kMiniProblem = R"(
(define (problem mini-1)
  (:domain mini)
  (:objects t - truck x y - place)
  (:init (at t x) (road x y))
  (:goal (and (at t y))))
)";

}  // namespace

TEST_SUITE("pddl") {
  TEST_CASE("logistics drive-truck parameters") {
    const Domain d = test::bundled_domain("logistics");
    const ActionSchema* a = d.find_action("drive-truck");
    REQUIRE(a != nullptr);
    std::vector<std::string> names;
    for (const auto& p : a->params) names.push_back(p.name);
    CHECK(names == std::vector<std::string>{"?truck", "?loc-from", "?loc-to", "?city"});
    CHECK(d.typed);
  }

  TEST_CASE("minimal domain with one nullary predicate") {
    const Domain d = parse_domain("(define (domain m) (:predicates (p)))");
    CHECK(d.predicates.size() == 1);
    CHECK(d.predicates[0].arity() == 0);
    CHECK(d.actions.empty());
  }

  TEST_CASE("constructs outside the fragment are rejected by name") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"(define (domain m) (:predicates (p ?x)) (:action a :parameters () :precondition (forall (?x) (p ?x)) "
         ":effect (p ?x)))",
         "forall"},
        {"(define (domain m) (:predicates (p) (q)) (:action a :parameters () :precondition (or (p) (q)) "
         ":effect (p)))",
         "or"},
        {"(define (domain m) (:predicates (p ?x)) (:action a :parameters () :precondition (exists (?x) (p ?x)) "
         ":effect (p ?x)))",
         "exists"},
        {"(define (domain m) (:predicates (p) (q)) (:action a :parameters () :precondition (p) "
         ":effect (when (p) (q))))",
         "when"},
        {"(define (domain m) (:requirements :action-costs) (:predicates (p)))", ":action-costs"},
        {"(define (domain m) (:predicates (p)) (:functions (total-cost)))", ":functions"},
        {"(define (domain m) (:predicates (p) (q)) (:action a :parameters () :precondition (imply (p) (q)) "
         ":effect (p)))",
         "imply"},
    };
    for (const auto& [text, construct] : cases) {
      CAPTURE(construct);
      try {
        (void)parse_domain(text);
        FAIL("accepted unsupported construct");
      } catch (const UnsupportedFeatureError& ex) {
        CHECK(ex.construct() == construct);
      }
    }
  }

  TEST_CASE("syntax errors carry line and column") {
    try {
      (void)parse_domain("(define (domain m)\n  (:predicates (p)\n");
      FAIL("accepted unbalanced input");
    } catch (const ParseError& ex) {
      CHECK(ex.line() == 2);
      CHECK(ex.column() == 3);
    }
    CHECK_THROWS_AS((void)parse_domain("(define (domain m)) )"), ParseError);
    CHECK_THROWS_AS((void)parse_domain(""), ParseError);
  }

  TEST_CASE("identifiers are lowercased") {
    const Domain d = parse_domain("(DEFINE (DOMAIN Mixed) (:PREDICATES (On ?X ?Y)))");
    CHECK(d.name == "mixed");
    CHECK(d.predicates[0].name == "on");
    CHECK(d.predicates[0].params[0].name == "?x");
  }

  TEST_CASE("problem validation") {
    const Domain d = parse_domain(kMiniTyped);
    CHECK_NOTHROW((void)parse_problem(kMiniProblem, d));
    CHECK_THROWS_AS((void)parse_problem("(define (problem p) (:domain other) (:objects) (:init) (:goal (and)))", d),
                    ParseError);
    CHECK_THROWS_AS(
        (void)parse_problem("(define (problem p) (:domain mini) (:objects x - place) (:init (fly x)) (:goal (and)))",
                            d),
        ParseError);
    CHECK_THROWS_AS(
        (void)parse_problem("(define (problem p) (:domain mini) (:objects x - place) (:init (road x)) (:goal (and)))",
                            d),
        ParseError);
    CHECK_THROWS_AS(
        (void)parse_problem(
            "(define (problem p) (:domain mini) (:objects x - place) (:init (road x z)) (:goal (and)))", d),
        ParseError);
    CHECK_THROWS_AS(
        (void)parse_problem("(define (problem p) (:domain mini) (:objects x - boat) (:init) (:goal (and)))", d),
        ParseError);
  }

  TEST_CASE("schema variables must be bound") {
    CHECK_THROWS_AS((void)parse_domain("(define (domain m) (:predicates (p ?x)) (:action a :parameters () "
                                       ":precondition (p ?y) :effect (p ?y)))"),
                    ParseError);
  }

  TEST_CASE("type hierarchy") {
    TypeHierarchy h;
    h.declare("vehicle");
    h.declare("truck", "vehicle");
    CHECK(h.path_to_root("truck") == std::vector<std::string>{"truck", "vehicle", "object"});
    CHECK(h.is_subtype("truck", "object"));
    CHECK_FALSE(h.is_subtype("vehicle", "truck"));
    CHECK(h.parent("object") == std::nullopt);
    CHECK_THROWS_AS(h.declare("vehicle", "truck"), ValidationError);
    CHECK_THROWS_AS(h.declare("object", "truck"), ValidationError);
  }

  TEST_CASE("bundled domains and problems round-trip") {
    for (const std::string name : {"blocksworld", "logistics", "ferry"}) {
      CAPTURE(name);
      const Domain d = test::bundled_domain(name);
      CHECK(parse_domain(to_pddl(d)) == d);
      CHECK(to_pddl(parse_domain(to_pddl(d))) == to_pddl(d));
      for (const auto& p : test::bundled_problems(name, d)) {
        CAPTURE(p.name);
        CHECK(parse_problem(to_pddl(p), d) == p);
      }
    }
  }

  TEST_CASE("detyping compiles types into predicates") {
    const Domain d = parse_domain(kMiniTyped);
    const Problem p = parse_problem(kMiniProblem, d);
    const auto [dd, dp] = detype_task(d, p);
    CHECK_FALSE(dd.typed);
    for (const std::string t : {"object", "vehicle", "truck", "place"}) {
      CAPTURE(t);
      const PredicateSchema* s = dd.find_predicate(t);
      REQUIRE(s != nullptr);
      REQUIRE(s->params.size() == 1);
      CHECK(s->params[0].name == std::string("?") + t);
    }
    const ActionSchema* drive = dd.find_action("drive");
    REQUIRE(drive != nullptr);
    REQUIRE(drive->precondition.size() == 5);
    CHECK(drive->precondition[0] == Literal{"truck", {"?v"}, true});
    CHECK(drive->precondition[1] == Literal{"place", {"?from"}, true});
    CHECK(drive->precondition[2] == Literal{"place", {"?to"}, true});
    for (const auto& param : drive->params) CHECK(param.type == "object");

    const std::set<Atom> init(dp.init.begin(), dp.init.end());
    for (const Atom& a : {Atom{"truck", {"t"}}, Atom{"vehicle", {"t"}}, Atom{"object", {"t"}},
                          Atom{"place", {"x"}}, Atom{"object", {"y"}}, Atom{"at", {"t", "x"}}}) {
      CHECK(init.count(a) == 1);
    }
    CHECK(init.size() == 2 + 3 + 2 * 2);
    for (const auto& o : dp.objects) CHECK(o.type == "object");
    CHECK(parse_domain(to_pddl(dd)) == dd);
    CHECK(parse_problem(to_pddl(dp), dd) == dp);
  }

  TEST_CASE("detyping an untyped task is the identity") {
    const Domain d = test::bundled_domain("blocksworld");
    const Problem p = test::bundled_problem("blocksworld", "bw-01", d);
    CHECK(detype(d) == d);
    CHECK(detype(d, p) == p);
  }

  TEST_CASE("detyping preserves plans and reachable states on bundled tasks") {
    const Domain d = test::bundled_domain("logistics");
    const Domain dd = detype(d);
    std::set<std::string> types{"object"};
    for (const auto& t : d.types.types()) types.insert(t);
    for (const std::string name : {"log-01", "log-02", "log-05"}) {
      CAPTURE(name);
      const Problem p = test::bundled_problem("logistics", name, d);
      const Problem dp = detype(d, p);
      const auto typed = bfs_plan(d, p);
      const auto untyped = bfs_plan(dd, dp);
      REQUIRE(typed.plan);
      REQUIRE(untyped.plan);
      CHECK(typed.plan->size() == untyped.plan->size());
      std::set<std::set<Atom>> a;
      std::set<std::set<Atom>> b;
      for (const auto& s : reachable_states(d, p, 200000)) a.insert(test::without_predicates(s, types));
      for (const auto& s : reachable_states(dd, dp, 200000)) b.insert(test::without_predicates(s, types));
      CHECK(a == b);
    }
  }
}
