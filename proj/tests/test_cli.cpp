// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "nlplan/error.hpp"
#include "support.hpp"

using namespace nlplan;
using namespace nlplan::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nlplan-test-cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

ExperimentConfig logistics_config(const fs::path& out) {
  ExperimentConfig c;
  c.domain = test::data_dir() / "logistics" / "domain.pddl";
  c.problems = (test::data_dir() / "logistics" / "problems" / "log-0[1235].pddl").string();
  c.thoughts = test::data_dir() / "logistics" / "thoughts.json";
  c.jobs = 2;
  c.out = out;
  return c;
}

std::size_t count_files(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir)) n += e.is_regular_file() ? 1 : 0;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("key-value parsing") {
    const auto kv = parse_key_values(
        "# experiment\n"
        "domain = data/d.pddl   # trailing\n"
        "\n"
        "out = \"my out # dir\"\n"
        "approaches=basic,react\n");
    CHECK(kv.at("domain") == "data/d.pddl");
    CHECK(kv.at("out") == "my out # dir");
    CHECK(kv.at("approaches") == "basic,react");
    CHECK(kv.size() == 3);
    CHECK_THROWS_AS((void)parse_key_values("no equals sign"), UsageError);
    CHECK_THROWS_AS((void)parse_key_values("= value"), UsageError);
  }

  TEST_CASE("config values") {
    ExperimentConfig c;
    apply_values(c,
                 {{"domain", "d.pddl"},
                  {"approaches", "react, Basic"},
                  {"seed", "7"},
                  {"step_limit", "10"},
                  {"time_limit", "1.5"},
                  {"backend", "replay"},
                  {"recording", "/abs/rec.jsonl"}},
                 "/base");
    CHECK(c.domain == fs::path("/base/d.pddl"));
    CHECK(c.recording == fs::path("/abs/rec.jsonl"));
    CHECK(c.approaches == std::vector<Approach>{Approach::kReAct, Approach::kBasic});
    CHECK(c.seed == 7);
    CHECK(c.step_limit == 10);
    CHECK(c.time_limit == doctest::Approx(1.5));
    CHECK_THROWS_AS(apply_values(c, {{"colour", "blue"}}), UsageError);
    CHECK_THROWS_AS(apply_values(c, {{"seed", "seven"}}), UsageError);
    CHECK_THROWS_AS(apply_values(c, {{"approaches", "basic,magic"}}), Error);
  }

  TEST_CASE("config files resolve paths against their directory") {
    const fs::path dir = fresh_dir("config");
    spit(dir / "exp.conf", "domain = ../d.pddl\nproblems = p/*.pddl\nruns = 3\n");
    const ExperimentConfig c = load_config(dir / "exp.conf");
    CHECK(c.domain.lexically_normal() == (dir / "../d.pddl").lexically_normal());
    CHECK(fs::path(c.problems) == dir / "p/*.pddl");
    CHECK(c.runs == 3);
    CHECK_THROWS_AS((void)load_config(dir / "absent.conf"), MissingFileError);
  }

  TEST_CASE("config validation") {
    ExperimentConfig c = logistics_config(fresh_dir("validate"));
    CHECK_NOTHROW(validate(c));
    ExperimentConfig missing = c;
    missing.domain = "/nonexistent/domain.pddl";
    CHECK_THROWS_AS(validate(missing), MissingFileError);
    ExperimentConfig zero = c;
    zero.step_limit = 0;
    CHECK_THROWS_AS(validate(zero), UsageError);
    ExperimentConfig replay = c;
    replay.backend = "replay";
    CHECK_THROWS_AS(validate(replay), UsageError);
    ExperimentConfig unknown = c;
    unknown.backend = "oracle";
    CHECK_THROWS_AS(validate(unknown), UsageError);
  }

  TEST_CASE("glob expansion is sorted") {
    const auto paths = expand_glob((test::data_dir() / "blocksworld" / "problems" / "bw-1*.pddl").string());
    REQUIRE(paths.size() == 10);
    CHECK(std::is_sorted(paths.begin(), paths.end()));
    CHECK(paths.front().filename() == "bw-10.pddl");
  }

  TEST_CASE("check command exit codes") {
    const fs::path dir = fresh_dir("check");
    std::ostringstream out;
    const fs::path domain = test::data_dir() / "logistics" / "domain.pddl";
    CHECK(cmd_check({domain, test::data_dir() / "logistics" / "problems" / "log-01.pddl",
                     test::data_dir() / "logistics" / "templates.json"},
                    out) == kExitOk);
    spit(dir / "bad.pddl",
         "(define (domain m) (:predicates (p ?x)) (:action a :parameters () :precondition (forall (?x) (p ?x)) "
         ":effect (p ?x)))");
    CHECK(cmd_check({dir / "bad.pddl"}, out) == kExitUserError);
    CHECK(cmd_check({dir / "absent.pddl"}, out) == kExitMissingFile);
    CHECK(cmd_check({domain, dir / "absent.pddl"}, out) == kExitMissingFile);

    CHECK(exit_code_for(MissingFileError("x")) == kExitMissingFile);
    CHECK(exit_code_for(UsageError("x")) == kExitUserError);
    CHECK(exit_code_for(ParseError("x", 1, 1)) == kExitUserError);
    CHECK(exit_code_for(std::runtime_error("x")) == kExitInternalError);
  }

  TEST_CASE("convert through the recorded exchanges reproduces the bundled templates") {
    const fs::path dir = fresh_dir("convert");
    ExperimentConfig c = logistics_config(dir / "a");
    c.backend = "replay";
    c.recording = test::fixture_dir() / "logistics_templates.jsonl";
    c.cache = dir / "cache.jsonl";
    std::ostringstream out;
    REQUIRE(cmd_convert(c, out) == kExitOk);
    const auto produced = nlohmann::json::parse(slurp(dir / "a" / "templates.json"));
    const auto bundled = nlohmann::json::parse(slurp(test::data_dir() / "logistics" / "templates.json"));
    CHECK(produced == bundled);
    CHECK(fs::exists(dir / "a" / "domain.txt"));
    CHECK(fs::exists(dir / "a" / "problems" / "log-05.txt"));

    // Second pass is served from the cache and writes identical bytes.
    c.out = dir / "b";
    std::ostringstream again;
    REQUIRE(cmd_convert(c, again) == kExitOk);
    CHECK(again.str().find("18 hits") != std::string::npos);
    for (const std::string f : {"templates.json", "domain.txt", "problems/log-01.txt"}) {
      CAPTURE(f);
      CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }

    ExperimentConfig mock = logistics_config(dir / "m");
    CHECK_THROWS_AS(cmd_convert(mock, out), TemplateError);
  }

  TEST_CASE("goldplans command") {
    const fs::path dir = fresh_dir("goldplans");
    ExperimentConfig c = logistics_config(dir);
    std::ostringstream out;
    REQUIRE(cmd_goldplans(c, {}, out) == kExitOk);
    const auto produced = load_gold_plans(dir / "gold_plans.json");
    const auto bundled = test::bundled_gold("logistics");
    REQUIRE(produced.size() == 4);
    for (const auto& [name, plan] : produced) {
      CAPTURE(name);
      CHECK(plan.solved());
      CHECK(plan.length() == bundled.at(name).length());
    }
  }

  TEST_CASE("mock runs, resume and replay") {
    const fs::path dir = fresh_dir("run");
    ExperimentConfig c = logistics_config(dir / "fresh");
    c.record = dir / "recording.jsonl";
    std::ostringstream out;
    REQUIRE(cmd_run(c, out) == kExitOk);
    // Three evaluated problems (the example is excluded) times four approaches.
    CHECK(count_files(dir / "fresh" / "logs") == 12);
    CHECK_FALSE(fs::exists(dir / "fresh" / "logs" / "logistics" / "basic" / "log-02.jsonl"));
    const Report report = nlohmann::json::parse(slurp(dir / "fresh" / "report.json")).get<Report>();
    REQUIRE(report.rows.size() == 4);
    for (const auto& row : report.rows) {
      CAPTURE(row.approach);
      CHECK(row.runs == 3);
      CHECK(row.acc == 1.0);
      CHECK(row.acc_zero == 1.0);
      CHECK(row.lf == 1.0);
    }

    // Resuming after losing some logs gives the same report.
    fs::remove(dir / "fresh" / "logs" / "logistics" / "react" / "log-03.jsonl");
    fs::remove(dir / "fresh" / "logs" / "logistics" / "basic" / "log-01.jsonl");
    const std::string before = slurp(dir / "fresh" / "report.json");
    std::ostringstream resumed;
    REQUIRE(cmd_run(c, resumed) == kExitOk);
    CHECK(resumed.str().find("resuming: 10 runs already logged") != std::string::npos);
    CHECK(slurp(dir / "fresh" / "report.json") == before);

    // Replaying the recording in two fresh directories is bit-identical.
    ExperimentConfig r = logistics_config(dir / "replay1");
    r.backend = "replay";
    r.recording = dir / "recording.jsonl";
    REQUIRE(cmd_run(r, out) == kExitOk);
    r.out = dir / "replay2";
    r.jobs = 1;
    REQUIRE(cmd_run(r, out) == kExitOk);
    CHECK(slurp(dir / "replay1" / "report.json") == slurp(dir / "replay2" / "report.json"));
    CHECK(slurp(dir / "replay1" / "report.json") == before);
    for (const std::string a : {"basic", "cot", "act", "react"}) {
      const fs::path rel = fs::path("logs") / "logistics" / a / "log-05.jsonl";
      CHECK(slurp(dir / "replay1" / rel) == slurp(dir / "replay2" / rel));
    }

    // The report command rebuilds the same files from the logs.
    std::ostringstream rep;
    REQUIRE(cmd_report(dir / "replay2", rep) == kExitOk);
    CHECK(slurp(dir / "replay2" / "report.json") == before);
  }

  TEST_CASE("scripted failures and baselines appear in the report") {
    const fs::path dir = fresh_dir("script");
    spit(dir / "script.json",
         R"({"log-01/basic": ["Action: juggle the packages\n[GOAL REACHED]"],
             "log-05/act": ["[GOAL REACHED]"]})");
    ExperimentConfig c = logistics_config(dir / "out");
    c.approaches = {Approach::kBasic, Approach::kAct};
    c.mock_script = dir / "script.json";
    c.runs = 2;
    std::ostringstream out;
    REQUIRE(cmd_run(c, out) == kExitOk);
    REQUIRE(cmd_baseline(c, "random", out) == kExitOk);
    REQUIRE(cmd_baseline(c, "bfs", out) == kExitOk);
    CHECK(fs::exists(dir / "out" / "baseline-logistics-random.json"));
    CHECK_THROWS_AS(cmd_baseline(c, "dfs", out), UsageError);
    const Report report = collect_report(dir / "out");
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].approach == "basic");
    CHECK(report.rows[0].acc == doctest::Approx(2.0 / 3.0));
    CHECK(report.rows[1].approach == "act");
    CHECK(report.rows[1].acc == 1.0);
    CHECK(report.rows[1].acc_zero == doctest::Approx(2.0 / 3.0));
    CHECK(report.rows[2].approach == "random");
    CHECK(report.rows[2].runs == 8);
    CHECK_FALSE(report.rows[2].acc_zero);
    CHECK(report.rows[3].approach == "bfs");
    CHECK(report.rows[3].acc == 1.0);
  }
}
