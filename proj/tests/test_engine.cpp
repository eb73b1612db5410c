// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <set>

#include "nlplan/engine.hpp"
#include "nlplan/error.hpp"
#include "nlplan/nl_encoding.hpp"
#include "support.hpp"

using namespace nlplan;

TEST_SUITE("engine") {
  TEST_CASE("deletes are applied before adds") {
    const Domain d = parse_domain(
        "(define (domain t) (:predicates (p) (q)) "
        "(:action flip :parameters () :precondition (p) :effect (and (q) (p) (not (p)))))");
    const Problem pr = parse_problem("(define (problem t1) (:domain t) (:init (p)) (:goal (and (q))))", d);
    const GroundAction a = ground(d, pr, "flip", {});
    const State s = apply(initial_state(pr), a);
    CHECK(s.contains(Atom{"p", {}}));
    CHECK(s.contains(Atom{"q", {}}));
  }

  TEST_CASE("negative preconditions and failure reasons") {
    const Domain d = test::bundled_domain("ferry");
    const Problem p = test::bundled_problem("ferry", "ferry-04", d);
    const TemplateMap tm = test::bundled_templates("ferry");
    const NamingMap names = rename_objects(p);
    const State s = initial_state(p);
    std::string here;
    for (const auto& a : s) {
      if (a.predicate == "at-ferry") here = a.args[0];
    }
    REQUIRE_FALSE(here.empty());
    const GroundAction stay = ground(d, p, "sail", {here, here});
    CHECK_FALSE(applicable(s, stay));
    const auto failed = failed_preconditions(s, stay);
    REQUIRE(failed.size() == 1);
    CHECK_FALSE(failed[0].positive);
    const Observation obs = observe(stay, s, tm, names);
    CHECK_FALSE(obs.executable);
    CHECK(obs.text == "I cannot sail from " + names.nl(here) + " to " + names.nl(here) + " because the ferry is at " +
                          names.nl(here) + ".");
    CHECK_THROWS_AS((void)apply(s, stay), EngineError);
  }

  TEST_CASE("every unmet precondition is reported in order") {
    const Domain d = test::bundled_domain("blocksworld");
    const Problem p = test::bundled_problem("blocksworld", "bw-01", d);
    const TemplateMap tm = test::bundled_templates("blocksworld");
    const NamingMap names = rename_objects(p);
    // bw-01: a on b, b and c on the table, hand empty.
    const GroundAction stack = ground(d, p, "stack", {"b", "a"});
    const State s = initial_state(p);
    const Observation obs = observe(stack, s, tm, names);
    CHECK_FALSE(obs.executable);
    CHECK(obs.text == "I cannot stack object_1 on top of object_0 because I am not holding object_1.");
    const GroundAction unstack = ground(d, p, "unstack", {"a", "b"});
    CHECK(observe(unstack, s, tm, names).text == "I unstack object_0 from on top of object_1.");
    const State after = apply(s, unstack);
    const Observation twice = observe(unstack, after, tm, names);
    CHECK(twice.failure_reasons ==
          std::vector<std::string>{"object_0 is not on top of object_1", "object_0 is not clear",
                                   "the hand is not empty"});
  }

  TEST_CASE("grounding errors") {
    const Domain d = test::bundled_domain("logistics");
    const Problem p = test::bundled_problem("logistics", "log-01", d);
    CHECK_THROWS_AS((void)ground(d, p, "teleport", {}), ValidationError);
    CHECK_THROWS_AS((void)ground(d, p, "drive-truck", {"t0", "l0"}), ValidationError);
    CHECK_THROWS_AS((void)ground(d, p, "drive-truck", {"t0", "l0", "l1", "nowhere"}), ValidationError);
    CHECK_THROWS_AS((void)ground(d, p, "drive-truck", {"p0", "l0", "l1", "c0"}), ValidationError);
    CHECK_NOTHROW((void)ground(d, p, "drive-truck", {"t0", "l0", "l1", "c0"}));
    // Airports are locations.
    CHECK_NOTHROW((void)ground(d, p, "drive-truck", {"t0", "a0", "l1", "c0"}));
  }

  TEST_CASE("ground_all matches brute-force enumeration") {
    const Domain d = test::bundled_domain("logistics");
    for (const std::string name : {"log-01", "log-03"}) {
      CAPTURE(name);
      const Problem p = test::bundled_problem("logistics", name, d);
      const auto objects = p.all_objects();
      std::set<std::pair<std::string, std::vector<std::string>>> expected;
      for (const auto& a : d.actions) {
        std::vector<std::size_t> idx(a.params.size(), 0);
        while (true) {
          std::vector<std::string> args;
          bool ok = true;
          for (std::size_t i = 0; i < idx.size(); ++i) {
            args.push_back(objects[idx[i]].name);
            ok = ok && d.types.is_subtype(objects[idx[i]].type, a.params[i].type);
          }
          if (ok) expected.insert({a.name, args});
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == objects.size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
      }
      std::set<std::pair<std::string, std::vector<std::string>>> got;
      const auto all = ground_all(d, p);
      for (const auto& g : all) got.insert({g.name, g.args});
      CHECK(all.size() == got.size());
      CHECK(got == expected);
    }
  }

  TEST_CASE("strict and lenient validation") {
    const Domain d = test::bundled_domain("blocksworld");
    const Problem p = test::bundled_problem("blocksworld", "bw-01", d);
    const auto gold = parse_plan(d, p, test::bundled_gold("blocksworld").at("bw-01").actions);
    const auto strict = validate_plan(p, gold, ValidationMode::kStrict);
    CHECK(strict.goal_satisfied);
    CHECK(strict.executable_step_count == gold.size());

    std::vector<GroundAction> noisy{ground(d, p, "pick-up", {"a"})};
    noisy.insert(noisy.end(), gold.begin(), gold.end());
    const auto s2 = validate_plan(p, noisy, ValidationMode::kStrict);
    CHECK_FALSE(s2.goal_satisfied);
    CHECK(s2.step_executable == std::vector<bool>{false});
    const auto l2 = validate_plan(p, noisy, ValidationMode::kLenient);
    CHECK(l2.goal_satisfied);
    CHECK(l2.step_executable == std::vector<bool>{false, true, true, true, true});
    CHECK(l2.executable_step_count == 4);
  }

  TEST_CASE("validation report JSON round trip") {
    const Domain d = test::bundled_domain("blocksworld");
    const Problem p = test::bundled_problem("blocksworld", "bw-01", d);
    const auto gold = parse_plan(d, p, test::bundled_gold("blocksworld").at("bw-01").actions);
    const auto report = validate_plan(p, gold, ValidationMode::kLenient);
    const nlohmann::json j = report;
    CHECK(j.get<ValidationReport>() == report);
  }

  TEST_CASE("gold plans of bundled problems validate") {
    for (const std::string name : {"blocksworld", "logistics", "ferry"}) {
      const Domain d = test::bundled_domain(name);
      const auto gold = test::bundled_gold(name);
      for (const auto& p : test::bundled_problems(name, d)) {
        CAPTURE(p.name);
        const auto plan = parse_plan(d, p, gold.at(p.name).actions);
        const auto r = validate_plan(p, plan, ValidationMode::kStrict);
        CHECK(r.goal_satisfied);
        CHECK(r.executable_step_count == plan.size());
      }
    }
  }
}
