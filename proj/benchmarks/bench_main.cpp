// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>
#include <vector>

#include "nlplan/engine.hpp"
#include "nlplan/harness.hpp"
#include "nlplan/nl_encoding.hpp"
#include "nlplan/pddl.hpp"
#include "nlplan/search.hpp"

using namespace nlplan;

namespace {

const std::filesystem::path kData = NLPLAN_BENCH_DATA_DIR;

Domain load_domain(const std::string& name) { return parse_domain(read_file((kData / name / "domain.pddl").string())); }

Problem load_problem(const std::string& domain, const std::string& name, const Domain& d) {
  return parse_problem(read_file((kData / domain / "problems" / (name + ".pddl")).string()), d);
}

void BM_ParseDomain(benchmark::State& state) {
  const std::string text = read_file((kData / "logistics" / "domain.pddl").string());
  for (auto _ : state) benchmark::DoNotOptimize(parse_domain(text));
}
BENCHMARK(BM_ParseDomain);

void BM_GroundAll(benchmark::State& state) {
  const Domain d = load_domain("logistics");
  const Problem p = load_problem("logistics", "log-06", d);
  for (auto _ : state) benchmark::DoNotOptimize(ground_all(d, p));
}
BENCHMARK(BM_GroundAll);

void BM_BfsBlocksworld(benchmark::State& state) {
  const Domain d = load_domain("blocksworld");
  const Problem p = load_problem("blocksworld", "bw-" + std::string(state.range(0) < 10 ? "0" : "") +
                                                    std::to_string(state.range(0)), d);
  for (auto _ : state) benchmark::DoNotOptimize(bfs_plan(d, p));
}
BENCHMARK(BM_BfsBlocksworld)->Arg(2)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BfsLogistics(benchmark::State& state) {
  const Domain d = load_domain("logistics");
  const Problem p = load_problem("logistics", "log-06", d);
  for (auto _ : state) benchmark::DoNotOptimize(bfs_plan(d, p));
}
BENCHMARK(BM_BfsLogistics)->Unit(benchmark::kMillisecond);

void BM_RandomRollout(benchmark::State& state) {
  const Domain d = load_domain("blocksworld");
  const Problem p = load_problem("blocksworld", "bw-08", d);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_rollout(d, p, 24, seed++));
}
BENCHMARK(BM_RandomRollout);

void BM_EncodeProblem(benchmark::State& state) {
  const Domain d = load_domain("logistics");
  const TemplateMap tm = TemplateMap::load(kData / "logistics" / "templates.json");
  const Problem p = detype(d, load_problem("logistics", "log-06", d));
  const NamingMap names = rename_objects(p);
  for (auto _ : state) benchmark::DoNotOptimize(encode_problem(p, tm, names));
}
BENCHMARK(BM_EncodeProblem);

void BM_TemplateMatch(benchmark::State& state) {
  const TemplateMap tm = TemplateMap::load(kData / "logistics" / "templates.json");
  const auto& e = tm.action("drive-truck");
  const std::vector<std::string> args{"truck_0", "location_0", "location_1", "city_0"};
  const std::string text = e.render(args);
  for (auto _ : state) benchmark::DoNotOptimize(e.tmpl.match(text, e.params));
}
BENCHMARK(BM_TemplateMatch);

}  // namespace

BENCHMARK_MAIN();
