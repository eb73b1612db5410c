// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <regex>
#include <thread>

#include <nlohmann/json.hpp>

#include "nlplan/engine.hpp"
#include "nlplan/harness.hpp"
#include "nlplan/llm.hpp"
#include "nlplan/nl_encoding.hpp"
#include "nlplan/pddl.hpp"
#include "nlplan/search.hpp"

namespace nlplan::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const std::exception& ex) {
  if (dynamic_cast<const MissingFileError*>(&ex)) return kExitMissingFile;
  if (dynamic_cast<const Error*>(&ex)) return kExitUserError;
  return kExitInternalError;
}

namespace {

// ---------------------------------------------------------------------------
// Files

std::string read_existing(const fs::path& path) {
  if (!fs::exists(path)) throw MissingFileError("file '" + path.string() + "' not found");
  return read_file(path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write '" + path.string() + "'");
    os << text;
  }
  fs::rename(tmp, path);
}

Domain load_domain(const fs::path& path) { return parse_domain(read_existing(path)); }

std::vector<Problem> load_problems(const ExperimentConfig& c, const Domain& domain) {
  if (c.problems.empty()) throw UsageError("no problem files given");
  const auto paths = expand_glob(c.problems);
  if (paths.empty()) throw MissingFileError("no problem files match '" + c.problems + "'");
  std::vector<Problem> out;
  for (const auto& p : paths) out.push_back(parse_problem(read_existing(p), domain));
  return out;
}

fs::path domain_dir(const ExperimentConfig& c) { return c.domain.parent_path(); }

// The configured file, else `name` next to the domain file if present.
std::optional<fs::path> beside_domain(const ExperimentConfig& c, const std::optional<fs::path>& configured,
                                      const char* name) {
  if (configured) return configured;
  fs::path p = domain_dir(c) / name;
  if (fs::exists(p)) return p;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Backends

std::string purpose_name(const ChatRequest& req) {
  if (req.max_tokens == max_tokens_for(LlmPurpose::kTemplateGeneration)) return "template generation";
  if (req.max_tokens == max_tokens_for(LlmPurpose::kTranslation)) return "translation";
  if (req.max_tokens == max_tokens_for(LlmPurpose::kThoughtGeneration)) return "thought generation";
  return "planning";
}

// Per-run planner state for the mock backend: scripted responses first, then
// the gold plan.
class MockPlanner {
 public:
  MockPlanner(std::deque<std::string> script, Approach approach, std::vector<std::string> gold,
              const HarnessConfig& config)
      : script_(std::move(script)), approach_(approach), gold_(std::move(gold)), config_(config) {}

  std::string respond() {
    if (!script_.empty()) {
      std::string r = std::move(script_.front());
      script_.pop_front();
      return r;
    }
    const bool thoughts = uses_thoughts(approach_);
    auto step = [&](const std::string& action) {
      return (thoughts ? "Thought: I move one step closer to the goal.\n" : std::string()) + "Action: " + action +
             "\n";
    };
    if (!is_interactive(approach_)) {
      std::string out;
      for (const auto& a : gold_) out += step(a);
      return out + config_.goal_marker + "\n";
    }
    const std::size_t i = next_++;
    return i < gold_.size() ? step(gold_[i]) : config_.goal_marker;
  }

 private:
  std::deque<std::string> script_;
  Approach approach_;
  std::vector<std::string> gold_;
  HarnessConfig config_;
  std::size_t next_ = 0;
};

thread_local MockPlanner* tl_planner = nullptr;

class PlannerBinding {
 public:
  explicit PlannerBinding(MockPlanner* p) { tl_planner = p; }
  ~PlannerBinding() { tl_planner = nullptr; }
  PlannerBinding(const PlannerBinding&) = delete;
  PlannerBinding& operator=(const PlannerBinding&) = delete;
};

// Deterministic offline backend. Template requests are served from a script,
// translation requests go to the template oracle, thought requests get
// generic numbered thoughts, planning requests go to the planner bound to the
// calling thread.
class MockRouter final : public LlmBackend {
 public:
  MockRouter(MockBackend::Responder translation, std::deque<std::string> template_script)
      : translation_(std::move(translation)), template_script_(std::move(template_script)) {}

  std::string complete(const ChatRequest& req) override {
    if (req.max_tokens == max_tokens_for(LlmPurpose::kTemplateGeneration)) {
      std::lock_guard lock(mutex_);
      if (template_script_.empty()) throw LlmError("the mock template script is exhausted");
      std::string r = std::move(template_script_.front());
      template_script_.pop_front();
      return r;
    }
    if (req.max_tokens == max_tokens_for(LlmPurpose::kTranslation) && translation_) return translation_(req);
    if (req.max_tokens == max_tokens_for(LlmPurpose::kThoughtGeneration) && !req.messages.empty()) {
      const std::string& text = req.messages.back().content;
      std::string out;
      std::size_t n = 0;
      for (auto pos = text.find("{THOUGHT "); pos != std::string::npos; pos = text.find("{THOUGHT ", pos + 1)) {
        out += std::to_string(++n) + ". I pick the action that brings me closer to the goal.\n";
      }
      return out;
    }
    if (!req.max_tokens && tl_planner) return tl_planner->respond();
    throw LlmError("the mock backend cannot answer " + purpose_name(req) + " requests");
  }
  std::string id() const override { return "mock"; }

 private:
  MockBackend::Responder translation_;
  std::mutex mutex_;
  std::deque<std::string> template_script_;
};

// Base backend plus optional cache and recorder.
class BackendStack {
 public:
  BackendStack(const ExperimentConfig& c, MockBackend::Responder translation,
               std::deque<std::string> template_script = {})
      : config_(c) {
    if (c.backend == "mock") {
      base_ = std::make_unique<MockRouter>(std::move(translation), std::move(template_script));
    } else if (c.backend == "replay") {
      base_ = std::make_unique<ReplayBackend>(ReplayBackend::load(*c.recording));
    } else {
      base_ = std::make_unique<RemoteBackend>(RemoteConfig::from_env());
    }
    top_ = base_.get();
    if (c.cache) {
      cache_ = std::make_unique<CachedBackend>(*top_, *c.cache);
      top_ = cache_.get();
    }
    if (c.record) {
      recorder_ = std::make_unique<RecordingBackend>(*top_);
      top_ = recorder_.get();
    }
  }

  LlmBackend& backend() { return *top_; }

  void finish(std::ostream& out) {
    if (cache_) out << "cache: " << cache_->hits() << " hits, " << cache_->misses() << " misses\n";
    if (recorder_) {
      // Merge with an earlier recording so resumed runs keep every exchange.
      std::vector<RecordedExchange> ex;
      if (fs::exists(*config_.record)) ex = load_recording(*config_.record);
      for (auto& e : recorder_->exchanges()) ex.push_back(std::move(e));
      std::stable_sort(ex.begin(), ex.end(),
                       [](const RecordedExchange& a, const RecordedExchange& b) { return a.digest < b.digest; });
      ex.erase(std::unique(ex.begin(), ex.end(),
                           [](const RecordedExchange& a, const RecordedExchange& b) { return a.digest == b.digest; }),
               ex.end());
      save_recording(*config_.record, ex);
      out << "recorded " << ex.size() << " exchanges to " << config_.record->string() << "\n";
    }
  }

 private:
  const ExperimentConfig& config_;
  std::unique_ptr<LlmBackend> base_;
  std::unique_ptr<CachedBackend> cache_;
  std::unique_ptr<RecordingBackend> recorder_;
  LlmBackend* top_ = nullptr;
};

// "problem/approach" -> scripted planner responses; "templates" -> scripted
// template-generation responses.
std::map<std::string, std::deque<std::string>> load_mock_script(const std::optional<fs::path>& path) {
  std::map<std::string, std::deque<std::string>> out;
  if (!path) return out;
  try {
    const json j = json::parse(read_existing(*path));
    for (const auto& [key, responses] : j.items()) {
      for (const auto& r : responses) out[key].push_back(r.get<std::string>());
    }
  } catch (const json::exception& ex) {
    throw UsageError("bad mock script '" + path->string() + "': " + ex.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Thoughts

struct ThoughtFile {
  std::string example;
  std::vector<std::string> thoughts;
};

ThoughtFile load_thought_file(const fs::path& path) {
  try {
    const json j = json::parse(read_existing(path));
    return {j.at("example").get<std::string>(), j.at("thoughts").get<std::vector<std::string>>()};
  } catch (const json::exception& ex) {
    throw UsageError("bad thoughts file '" + path.string() + "': " + ex.what());
  }
}

// The manual thoughts of a seed domain directory, with their ReAct skeleton.
ThoughtSeed load_thought_seed(const fs::path& dir) {
  const Domain domain = load_domain(dir / "domain.pddl");
  const PreparedDomain pd = prepare_domain(domain, TemplateMap::load(dir / "templates.json"));
  const ThoughtFile tf = load_thought_file(dir / "thoughts.json");
  const GoldPlanSet gold = load_gold_plans(dir / "gold_plans.json");
  const auto it = gold.find(tf.example);
  if (it == gold.end() || !it->second.solved()) {
    throw UsageError("thought seed example '" + tf.example + "' has no gold plan");
  }
  const Problem problem = parse_problem(read_existing(dir / "problems" / (tf.example + ".pddl")), domain);
  const PreparedProblem pp = prepare_problem(pd, problem);
  const auto plan = parse_plan(pd.detyped, pp.detyped, it->second.actions);
  return {pd.text, build_thought_skeleton(pd, pp, plan), tf.thoughts};
}

std::vector<std::string> resolve_thoughts(const ExperimentConfig& c, const PreparedDomain& pd,
                                          const PreparedProblem& example, const std::vector<GroundAction>& plan,
                                          LlmBackend& llm, std::ostream& out) {
  if (auto path = beside_domain(c, c.thoughts, "thoughts.json")) {
    ThoughtFile tf = load_thought_file(*path);
    if (tf.example != example.problem.name) {
      throw UsageError("thoughts in '" + path->string() + "' are for '" + tf.example + "', but the example is '" +
                       example.problem.name + "'");
    }
    return tf.thoughts;
  }
  if (!c.thought_seed) {
    throw UsageError("CoT and ReAct need example thoughts: provide a thoughts file or a thought seed directory");
  }
  const ThoughtSeed seed = load_thought_seed(*c.thought_seed);
  auto thoughts = generate_thoughts(pd.text, build_thought_skeleton(pd, example, plan), seed, llm);
  write_text(c.out / ("thoughts-" + pd.domain.name + ".json"),
             json{{"example", example.problem.name}, {"thoughts", thoughts}}.dump(2) + "\n");
  out << "generated " << thoughts.size() << " example thoughts\n";
  return thoughts;
}

// ---------------------------------------------------------------------------
// Run logs

fs::path log_path(const fs::path& out_dir, const std::string& domain, Approach a, const std::string& problem) {
  return out_dir / "logs" / domain / std::string(to_string(a)) / (problem + ".jsonl");
}

struct LoggedRun {
  std::string domain;
  RunResult result;
};

std::optional<LoggedRun> read_log(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  try {
    const json j = json::parse(last);
    if (!j.contains("summary")) return std::nullopt;
    return LoggedRun{j.at("domain").get<std::string>(), j.at("summary").get<RunResult>()};
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void write_log(const fs::path& path, const std::string& domain, const RunResult& r) {
  std::string text;
  for (std::size_t i = 0; i < r.trajectory.steps.size(); ++i) {
    json step = r.trajectory.steps[i];
    step["step"] = i + 1;
    text += step.dump() + "\n";
  }
  text += json{{"domain", domain}, {"summary", r}}.dump() + "\n";
  write_text(path, text);
}

}  // namespace

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::vector<fs::path>& paths, std::ostream& out) {
  static const std::regex kHeader(R"(\(\s*define\s*\(\s*(domain|problem)\b)", std::regex::icase);
  std::optional<Domain> domain;
  int code = kExitOk;
  for (const auto& path : paths) {
    try {
      const std::string text = read_existing(path);
      if (path.extension() == ".json") {
        if (!domain) throw UsageError("template file given before any domain");
        const auto missing = TemplateMap::load(path).missing(detype(*domain));
        if (!missing.empty()) {
          std::string msg = "missing templates:";
          for (const auto& m : missing) msg += " " + m + ";";
          msg.pop_back();
          throw TemplateError(msg);
        }
        out << path.string() << ": templates cover domain " << domain->name << "\n";
        continue;
      }
      std::smatch m;
      if (!std::regex_search(text, m, kHeader)) throw ParseError("not a PDDL domain or problem", 1, 1);
      std::string kind = m[1].str();
      std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char ch) { return std::tolower(ch); });
      if (kind == "domain") {
        Domain d = parse_domain(text);
        if (parse_domain(to_pddl(d)) != d) throw Error("domain does not survive a serialize/parse round trip");
        const Domain dt = detype(d);
        out << path.string() << ": domain " << d.name << ", " << d.predicates.size() << " predicates, "
            << d.actions.size() << " actions, " << (d.typed ? "typed" : "untyped") << ", "
            << dt.predicates.size() << " predicates after detyping: ok\n";
        domain = std::move(d);
      } else {
        if (!domain) throw UsageError("problem given before its domain");
        const Problem p = parse_problem(text, *domain);
        if (parse_problem(to_pddl(p), *domain) != p) {
          throw Error("problem does not survive a serialize/parse round trip");
        }
        const Problem pt = detype(*domain, p);
        out << path.string() << ": problem " << p.name << ", " << p.all_objects().size() << " objects, "
            << p.init.size() << " init atoms (" << pt.init.size() << " detyped), " << p.goal.size()
            << " goal literals: ok\n";
      }
    } catch (const std::exception& ex) {
      out << path.string() << ": error: " << ex.what() << "\n";
      code = std::max(code, exit_code_for(ex));
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// convert

int cmd_convert(const ExperimentConfig& c, std::ostream& out) {
  validate(c);
  const Domain domain = load_domain(c.domain);
  const auto problems = load_problems(c, domain);
  const Domain detyped = detype(domain);

  TemplateMap templates;
  if (c.templates) templates = TemplateMap::load(*c.templates);
  auto script = load_mock_script(c.mock_script);
  BackendStack stack(c, nullptr, script["templates"]);
  LlmBackend& llm = stack.backend();
  std::size_t generated = 0;
  for (const auto& p : detyped.predicates) {
    if (templates.has_predicate(p.name)) continue;
    std::vector<std::string> params;
    for (const auto& tp : p.params) params.push_back(tp.name);
    try {
      templates.set_predicate(p.name, generate_predicate_template(p, llm), params, Provenance::kLlm);
    } catch (const Error& ex) {
      throw TemplateError("no template for predicate '" + p.name + "': " + ex.what());
    }
    ++generated;
  }
  for (const auto& a : detyped.actions) {
    if (templates.has_action(a.name)) continue;
    std::vector<std::string> params;
    for (const auto& tp : a.params) params.push_back(tp.name);
    try {
      templates.set_action(a.name, generate_action_template(a, templates, llm), params, Provenance::kLlm);
    } catch (const Error& ex) {
      throw TemplateError("no template for action '" + a.name + "': " + ex.what());
    }
    ++generated;
  }
  stack.finish(out);

  const PreparedDomain pd = prepare_domain(domain, templates);
  fs::create_directories(c.out);
  templates.save(c.out / "templates.json");
  write_text(c.out / "domain.txt", pd.text);
  for (const auto& p : problems) {
    const PreparedProblem pp = prepare_problem(pd, p);
    write_text(c.out / "problems" / (p.name + ".txt"), encode_problem(pp.detyped, pd.templates, pp.names));
  }
  out << "generated " << generated << " templates; wrote " << problems.size() << " problem encodings to "
      << c.out.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// goldplans

int cmd_goldplans(const ExperimentConfig& c, const fs::path& output, std::ostream& out) {
  validate(c);
  const Domain domain = load_domain(c.domain);
  const auto problems = load_problems(c, domain);
  GoldPlanSet plans;
  for (const auto& p : problems) {
    const auto r = bfs_plan(domain, p, std::chrono::duration<double>(c.time_limit));
    GoldPlan g;
    g.seconds = r.wall_time.count();
    if (r.plan) {
      for (const auto& a : *r.plan) g.actions.push_back(a.to_pddl());
    } else {
      g.status = r.timed_out ? "timeout" : "unsolvable";
    }
    out << p.name << ": " << g.status;
    if (g.solved()) out << ", length " << g.length();
    out << ", " << r.expanded << " expanded\n";
    plans.emplace(p.name, std::move(g));
  }
  const fs::path target = output.empty() ? c.out / "gold_plans.json" : output;
  save_gold_plans(target, plans);
  out << "wrote " << target.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run

int cmd_run(const ExperimentConfig& c, std::ostream& out) {
  validate(c);
  const Domain domain = load_domain(c.domain);
  const auto problems = load_problems(c, domain);
  const auto templates_path = beside_domain(c, c.templates, "templates.json");
  if (!templates_path) throw UsageError("no templates for '" + c.domain.string() + "'; run convert first");
  const auto gold_path = beside_domain(c, c.gold_plans, "gold_plans.json");
  if (!gold_path) throw UsageError("no gold plans for '" + c.domain.string() + "'; run goldplans first");

  const PreparedDomain pd = prepare_domain(domain, TemplateMap::load(*templates_path));
  const GoldPlanSet all_gold = load_gold_plans(*gold_path);
  GoldPlanSet gold;
  for (const auto& p : problems) {
    auto it = all_gold.find(p.name);
    if (it == all_gold.end()) throw UsageError("no gold plan for problem '" + p.name + "'");
    gold.emplace(p.name, it->second);
  }

  const std::string example_name = select_example_problem(gold);
  const Problem& example_problem =
      *std::find_if(problems.begin(), problems.end(), [&](const Problem& p) { return p.name == example_name; });
  const PreparedProblem example_pp = prepare_problem(pd, example_problem);
  const auto example_plan = parse_plan(pd.detyped, example_pp.detyped, gold.at(example_name).actions);
  out << "example problem: " << example_name << " (" << example_plan.size() << " steps)\n";

  BackendStack stack(c, make_translation_oracle(pd));
  LlmBackend& llm = stack.backend();

  HarnessConfig hc;
  hc.step_limit = c.step_limit;
  hc.seed = c.seed;

  std::vector<std::string> thoughts;
  if (std::any_of(c.approaches.begin(), c.approaches.end(), uses_thoughts)) {
    thoughts = resolve_thoughts(c, pd, example_pp, example_plan, llm, out);
  }
  std::map<Approach, FewShotExample> examples;
  for (Approach a : c.approaches) examples.emplace(a, build_fewshot(a, pd, example_pp, example_plan, thoughts));

  struct Target {
    PreparedProblem pp;
    TranslationPrompt translation;
    std::vector<std::string> gold_nl;
    std::size_t optimal = 0;
  };
  std::vector<Target> targets;
  for (const auto& p : problems) {
    if (p.name == example_name) continue;
    const GoldPlan& g = gold.at(p.name);
    if (!g.solved()) {
      out << "skipping " << p.name << ": no gold plan (" << g.status << ")\n";
      continue;
    }
    Target t{prepare_problem(pd, p), {}, {}, g.length()};
    t.translation = build_translation_prompt(pd, t.pp.names, c.seed);
    for (const auto& a : parse_plan(pd.detyped, t.pp.detyped, g.actions)) {
      t.gold_nl.push_back(encode_ground_action(a, pd.templates, t.pp.names));
    }
    targets.push_back(std::move(t));
  }

  auto script = load_mock_script(c.mock_script);
  struct Task {
    Approach approach;
    const Target* target;
  };
  std::vector<Task> tasks;
  std::size_t resumed = 0;
  for (Approach a : c.approaches) {
    for (const auto& t : targets) {
      if (read_log(log_path(c.out, domain.name, a, t.pp.problem.name))) {
        ++resumed;
        continue;
      }
      tasks.push_back({a, &t});
    }
  }
  if (resumed > 0) out << "resuming: " << resumed << " runs already logged\n";

  std::atomic<std::size_t> next{0};
  std::mutex out_mutex;
  std::vector<std::exception_ptr> failures(tasks.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      const std::string& name = task.target->pp.problem.name;
      try {
        const std::string key = name + "/" + std::string(to_string(task.approach));
        std::deque<std::string> s;
        if (auto it = script.find(key); it != script.end()) s = it->second;
        MockPlanner planner(std::move(s), task.approach, task.target->gold_nl, hc);
        PlannerBinding binding(&planner);
        RunContext ctx{pd, task.target->pp, examples.at(task.approach), task.target->translation,
                       task.target->optimal, hc};
        const RunResult r = run_approach(task.approach, ctx, llm, llm);
        write_log(log_path(c.out, domain.name, task.approach, name), domain.name, r);
        std::lock_guard lock(out_mutex);
        out << to_string(task.approach) << " " << name << ": " << (r.correct ? "solved" : "failed") << " ("
            << to_string(r.trajectory.status) << ", " << r.trajectory.steps.size() << " steps)\n";
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::size_t jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  stack.finish(out);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& ex) {
      out << to_string(tasks[i].approach) << " " << tasks[i].target->pp.problem.name << ": aborted: " << ex.what()
          << "\n";
    }
  }
  if (auto first = std::find_if(failures.begin(), failures.end(), [](const auto& f) { return bool(f); });
      first != failures.end()) {
    out << "completed runs are logged; rerun to resume\n";
    std::rethrow_exception(*first);
  }

  const Report report = collect_report(c.out);
  write_report(c.out, report);
  out << render_table(report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// baseline

int cmd_baseline(const ExperimentConfig& c, const std::string& kind, std::ostream& out) {
  validate(c);
  const Domain domain = load_domain(c.domain);
  const auto problems = load_problems(c, domain);
  Report report;
  if (kind == "bfs") {
    std::size_t solved = 0;
    for (const auto& p : problems) {
      const auto r = bfs_plan(domain, p, std::chrono::duration<double>(c.time_limit));
      if (r.plan) ++solved;
      out << p.name << ": " << (r.plan ? "solved" : r.timed_out ? "timeout" : "unsolvable") << "\n";
    }
    report.rows.push_back(baseline_row(domain.name, "bfs", problems.size(), solved));
  } else if (kind == "random") {
    const auto r = random_baseline(domain, problems, c.runs, c.step_limit, c.seed);
    std::size_t successes = 0;
    for (const auto& p : r.problems) {
      const auto n = static_cast<std::size_t>(
          std::count_if(p.runs.begin(), p.runs.end(), [](const RolloutOutcome& o) { return o.reached_goal; }));
      out << p.problem << ": " << n << "/" << p.runs.size() << "\n";
      successes += n;
    }
    report.rows.push_back(baseline_row(domain.name, "random", problems.size() * c.runs, successes));
  } else {
    throw UsageError("unknown baseline '" + kind + "' (expected bfs or random)");
  }
  write_text(c.out / ("baseline-" + domain.name + "-" + kind + ".json"), json(report).dump(2) + "\n");
  out << render_table(report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

Report collect_report(const fs::path& out_dir) {
  std::map<std::pair<std::string, Approach>, std::vector<RunResult>> groups;
  const fs::path logs = out_dir / "logs";
  if (fs::is_directory(logs)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(logs)) {
      if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      if (auto run = read_log(f)) groups[{run->domain, run->result.approach}].push_back(std::move(run->result));
    }
  }
  Report report;
  for (const auto& [key, results] : groups) report.rows.push_back(summarize(key.first, key.second, results));
  if (fs::is_directory(out_dir)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(out_dir)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("baseline-", 0) == 0 && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        auto r = json::parse(read_file(f.string())).get<Report>();
        report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
      } catch (const json::exception& ex) {
        throw Error("bad baseline file '" + f.string() + "': " + ex.what());
      }
    }
  }
  sort_rows(report);
  return report;
}

void write_report(const fs::path& out_dir, const Report& report) {
  write_text(out_dir / "report.json", json(report).dump(2) + "\n");
  write_text(out_dir / "report.txt", render_table(report));
  write_text(out_dir / "report.csv", render_csv(report));
}

int cmd_report(const fs::path& out_dir, std::ostream& out) {
  if (!fs::is_directory(out_dir)) throw MissingFileError("output directory '" + out_dir.string() + "' not found");
  const Report report = collect_report(out_dir);
  write_report(out_dir, report);
  out << render_table(report);
  return kExitOk;
}

}  // namespace nlplan::cli
