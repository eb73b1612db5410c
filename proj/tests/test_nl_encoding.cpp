// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <random>

#include "nlplan/error.hpp"
#include "nlplan/llm.hpp"
#include "nlplan/nl_encoding.hpp"
#include "support.hpp"

using namespace nlplan;

namespace {

std::vector<std::string> params(std::initializer_list<const char*> names) { return {names.begin(), names.end()}; }

}  // namespace

TEST_SUITE("nl_encoding") {
  TEST_CASE("template parsing and placeholder validation") {
    const Template t = Template::parse("drive truck {?truck} from {?from} to {?to}");
    CHECK(t.placeholders() == params({"?truck", "?from", "?to"}));
    CHECK_FALSE(t.violation(params({"?truck", "?from", "?to"})));
    CHECK_FALSE(t.violation(params({"?to", "?from", "?truck"})));
    CHECK(t.violation(params({"?truck", "?from"})));
    CHECK(t.violation(params({"?truck", "?from", "?to", "?city"})));
    CHECK(Template::parse("{?x} and {?x}").violation(params({"?x"})));
    CHECK(Template::parse("the hand is empty").placeholders().empty());
    CHECK_THROWS_AS((void)Template::parse("unterminated {?x"), TemplateError);
    CHECK_THROWS_AS((void)Template::parse("empty {}"), TemplateError);
    CHECK_THROWS_AS((void)Template::parse("stray } brace"), TemplateError);
  }

  TEST_CASE("instantiate and match are inverse") {
    const Template t = Template::parse("stack {?x} on top of {?y}");
    const auto ps = params({"?x", "?y"});
    const std::vector<std::string> args{"object_0", "object_1"};
    const std::string text = t.instantiate(ps, args);
    CHECK(text == "stack object_0 on top of object_1");
    CHECK(t.match(text, ps) == args);
    CHECK_FALSE(t.match("stack object_0 under object_1", ps));
  }

  TEST_CASE("match inverts instantiate for every bundled template") {
    std::mt19937 rng(7);
    const std::vector<std::string> pool{"truck_0", "city_1", "object_12", "location_3", "airport_0", "obj_q"};
    for (const std::string domain : {"blocksworld", "logistics", "ferry"}) {
      const TemplateMap tm = test::bundled_templates(domain);
      for (const auto* group : {&tm.predicates(), &tm.actions()}) {
        for (const auto& [name, e] : *group) {
          CAPTURE(name);
          for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::string> args;
            for (std::size_t i = 0; i < e.params.size(); ++i) args.push_back(pool[rng() % pool.size()]);
            const std::string text = e.render(args);
            const auto back = e.tmpl.match(text, e.params);
            REQUIRE(back);
            CHECK(*back == args);
          }
        }
      }
    }
  }

  TEST_CASE("negation rules") {
    CHECK(negate_phrase("truck_0 is at location_0") == "truck_0 is not at location_0");
    CHECK(negate_phrase("the blocks are stacked") == "the blocks are not stacked");
    CHECK(negate_phrase("I am holding object_0") == "I am not holding object_0");
    CHECK(negate_phrase("the robot can move") == "the robot cannot move");
    CHECK(negate_phrase("the robot has a key") == "the robot does not have a key");
    // The earliest rule wins.
    CHECK(negate_phrase("the arm has what is needed") == "the arm does not have what is needed");
    CHECK(negate_phrase("object_0 touches object_1") == "it is not the case that object_0 touches object_1");
  }

  TEST_CASE("list joining") {
    CHECK(join_list(std::vector<std::string>{}) == "");
    CHECK(join_list(std::vector<std::string>{"a"}) == "a");
    CHECK(join_list(std::vector<std::string>{"a", "b"}) == "a and b");
    CHECK(join_list(std::vector<std::string>{"a", "b", "c"}) == "a, b and c");
  }

  TEST_CASE("object renaming") {
    const Domain d = test::bundled_domain("logistics");
    const Problem p = test::bundled_problem("logistics", "log-01", d);
    const NamingMap names = rename_objects(p);
    CHECK(names.nl("c1") == "city_1");
    CHECK(names.nl("a0") == "airport_0");
    CHECK(names.nl("l1") == "location_1");
    CHECK(names.nl("t0") == "truck_0");
    CHECK(names.nl("p0") == "airplane_0");
    CHECK(names.nl("pk0") == "package_0");
    CHECK(names.pddl("location_0") == std::optional<std::string>("l0"));
    CHECK_FALSE(names.pddl("location_9"));
    // Pairs follow declaration order.
    CHECK(names.pairs().front() == std::pair<std::string, std::string>{"c0", "city_0"});
    CHECK(names.pairs().back() == std::pair<std::string, std::string>{"pk0", "package_0"});

    const Domain bw = test::bundled_domain("blocksworld");
    const NamingMap plain = rename_objects(test::bundled_problem("blocksworld", "bw-01", bw));
    CHECK(plain.nl("a") == "object_0");
    CHECK(plain.nl("c") == "object_2");

    CHECK_THROWS_AS(NamingMap({{"a", "x"}, {"b", "x"}}), ValidationError);
    CHECK_THROWS_AS(NamingMap({{"a", "x"}, {"a", "y"}}), ValidationError);
  }

  TEST_CASE("renaming is injective on every bundled problem") {
    for (const std::string domain : {"blocksworld", "logistics", "ferry"}) {
      const Domain d = test::bundled_domain(domain);
      for (const auto& p : test::bundled_problems(domain, d)) {
        CAPTURE(p.name);
        const NamingMap names = rename_objects(p);
        CHECK(names.size() == p.all_objects().size());
        for (const auto& [pddl, nl] : names.pairs()) CHECK(names.pddl(nl) == std::optional<std::string>(pddl));
      }
    }
  }

  TEST_CASE("domain encoding") {
    const Domain d = test::bundled_domain("ferry");
    const std::string text = encode_domain(d, test::bundled_templates("ferry"));
    CHECK(text.find("I can do the following actions:\nI can sail from A to B.\nI can board a car A at B.\n") == 0);
    CHECK(text.find("I can sail from A to B only if A is a location, B is a location and the ferry is at A.\n") !=
          std::string::npos);
    CHECK(text.find("I can sail from A to B only if the ferry is not at B.\n") != std::string::npos);
    CHECK(text.find("Once I board a car A at B, it is not the case anymore that A is at B and it is not the case "
                    "anymore that the ferry is empty.\n") != std::string::npos);
    CHECK(text.find("types") == std::string::npos);

    const Domain log = test::bundled_domain("logistics");
    const std::string ltext = encode_domain(log, test::bundled_templates("logistics"));
    CHECK(ltext.find("I can drive a truck A from a location B in a city D to a location C in the same city only if "
                     "A is at B, B is in the D and C is in the D.\n") != std::string::npos);
    CHECK(ltext.find("The objects have the following types:\n") != std::string::npos);
    CHECK(ltext.find("Every truck is a vehicle.\n") != std::string::npos);
  }

  TEST_CASE("problem encoding") {
    const Domain d = test::bundled_domain("blocksworld");
    const Problem p = test::bundled_problem("blocksworld", "bw-01", d);
    const std::string text = encode_problem(p, test::bundled_templates("blocksworld"), rename_objects(p));
    CHECK(text ==
          "My goal is to reach a state in which object_0 is on top of object_2 and object_1 is on top of object_0.\n"
          "The following objects are available: object_0, object_1 and object_2.\n"
          "Initially, the following is the case: object_0 is clear. object_2 is clear. the hand is empty. object_0 "
          "is on top of object_1. object_1 is on the table. object_2 is on the table.\n");
    CHECK(encode_goal(std::vector<Literal>{}, test::bundled_templates("blocksworld"), rename_objects(p)) ==
          "There are no goal conditions.");
  }

  TEST_CASE("template map JSON round trip and completeness") {
    const TemplateMap tm = test::bundled_templates("logistics");
    const nlohmann::json j = tm;
    const TemplateMap back = j.get<TemplateMap>();
    CHECK(nlohmann::json(back) == j);
    CHECK(tm.missing(detype(test::bundled_domain("logistics"))).empty());
    CHECK_FALSE(tm.missing(test::bundled_domain("blocksworld")).empty());
    CHECK_THROWS_AS(tm.require_complete(test::bundled_domain("blocksworld")), TemplateError);
  }

  TEST_CASE("template generation validates and retries") {
    const PredicateSchema at{"at", {TypedName{"?obj"}, TypedName{"?loc"}}};
    SUBCASE("accepts a valid first answer, normalised") {
      MockBackend llm(std::vector<std::string>{"\"{?obj} is at {?loc}.\"\nextra line"});
      CHECK(generate_predicate_template(at, llm).text() == "{?obj} is at {?loc}");
      const auto reqs = llm.requests();
      REQUIRE(reqs.size() == 1);
      CHECK(reqs[0].max_tokens == 50);
      CHECK(reqs[0].temperature == 0.0);
    }
    SUBCASE("rejects a missing placeholder and accepts the retry") {
      MockBackend llm(std::vector<std::string>{"{?obj} is somewhere", "{?obj} is at {?loc}"});
      CHECK(generate_predicate_template(at, llm).text() == "{?obj} is at {?loc}");
      const auto reqs = llm.requests();
      REQUIRE(reqs.size() == 2);
      REQUIRE(reqs[1].messages.size() == reqs[0].messages.size() + 2);
      CHECK(reqs[1].messages[reqs[0].messages.size()].content == "{?obj} is somewhere");
      CHECK(reqs[1].messages.back().content.find("{?loc}") != std::string::npos);
    }
    SUBCASE("gives up after two invalid answers") {
      MockBackend llm(std::vector<std::string>{"{?obj} is somewhere", "{?x} is at {?loc}"});
      CHECK_THROWS_AS((void)generate_predicate_template(at, llm), TemplateError);
    }
    SUBCASE("rejects malformed and duplicated placeholders") {
      MockBackend llm(std::vector<std::string>{"{?obj} is at {?obj} and {?loc}", "{?obj is at {?loc}"});
      CHECK_THROWS_AS((void)generate_predicate_template(at, llm), TemplateError);
    }
  }

  TEST_CASE("action description for template generation") {
    const Domain d = detype(test::bundled_domain("logistics"));
    const std::string text = describe_action_for_template(*d.find_action("drive-truck"), test::bundled_templates("logistics"));
    CHECK(text ==
          "action: drive-truck\n"
          "parameters: (?truck ?loc-from ?loc-to ?city)\n"
          "preconditions of drive-truck: ?truck is a truck and ?loc-from is a location and ?loc-to is a location "
          "and ?city is a city and ?truck is at ?loc-from and ?loc-from is in the ?city and ?loc-to is in the ?city\n"
          "effects of drive-truck: it becomes true that ?truck is at ?loc-to and it is not the case anymore that "
          "?truck is at ?loc-from");
  }

  TEST_CASE("generate_templates keeps existing entries") {
    const Domain d = test::bundled_domain("blocksworld");
    TemplateMap existing = test::bundled_templates("blocksworld");
    MockBackend llm;
    const TemplateMap out = generate_templates(d, llm, existing);
    CHECK(llm.requests().empty());
    CHECK(nlohmann::json(out) == nlohmann::json(existing));
  }
}
