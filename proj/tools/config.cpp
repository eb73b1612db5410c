// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <glob.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "nlplan/pddl.hpp"

namespace nlplan::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw UsageError("bad value for '" + key + "': '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw UsageError("bad value for '" + key + "': '" + value + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

std::vector<Approach> parse_approaches(const std::string& list) {
  std::vector<Approach> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(approach_from_string(item));
    } catch (const Error& ex) {
      throw UsageError(ex.what());
    }
  }
  if (out.empty()) throw UsageError("no approaches given");
  return out;
}

void apply_values(ExperimentConfig& c, const std::map<std::string, std::string>& values,
                  const std::filesystem::path& base) {
  for (const auto& [key, value] : values) {
    if (key == "domain") {
      c.domain = resolve(base, value);
    } else if (key == "problems") {
      c.problems = resolve(base, value).string();
    } else if (key == "templates") {
      c.templates = resolve(base, value);
    } else if (key == "gold_plans") {
      c.gold_plans = resolve(base, value);
    } else if (key == "thoughts") {
      c.thoughts = resolve(base, value);
    } else if (key == "thought_seed") {
      c.thought_seed = resolve(base, value);
    } else if (key == "approaches") {
      c.approaches = parse_approaches(value);
    } else if (key == "backend") {
      c.backend = value;
    } else if (key == "recording") {
      c.recording = resolve(base, value);
    } else if (key == "mock_script") {
      c.mock_script = resolve(base, value);
    } else if (key == "cache") {
      c.cache = resolve(base, value);
    } else if (key == "record") {
      c.record = resolve(base, value);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "step_limit") {
      c.step_limit = parse_number<std::size_t>(key, value);
    } else if (key == "time_limit") {
      c.time_limit = parse_double(key, value);
    } else if (key == "runs") {
      c.runs = parse_number<std::size_t>(key, value);
    } else if (key == "jobs") {
      c.jobs = parse_number<std::size_t>(key, value);
    } else if (key == "out") {
      c.out = resolve(base, value);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw MissingFileError("config file '" + path.string() + "' not found");
  ExperimentConfig c;
  apply_values(c, parse_key_values(read_file(path.string())), path.parent_path());
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.domain.empty()) throw UsageError("no domain file given");
  if (!std::filesystem::exists(c.domain)) throw MissingFileError("domain file '" + c.domain.string() + "' not found");
  for (const auto* p : {&c.templates, &c.gold_plans, &c.thoughts, &c.recording, &c.mock_script}) {
    if (*p && !std::filesystem::exists(**p)) throw MissingFileError("file '" + (*p)->string() + "' not found");
  }
  if (c.thought_seed && !std::filesystem::is_directory(*c.thought_seed)) {
    throw MissingFileError("thought seed directory '" + c.thought_seed->string() + "' not found");
  }
  if (c.step_limit == 0) throw UsageError("step limit must be positive");
  if (!(c.time_limit > 0)) throw UsageError("time limit must be positive");
  if (c.runs == 0) throw UsageError("runs must be positive");
  if (c.backend != "mock" && c.backend != "replay" && c.backend != "remote") {
    throw UsageError("backend must be mock, replay or remote");
  }
  if (c.backend == "replay" && !c.recording) throw UsageError("the replay backend needs a recording file");
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::filesystem::path> out;
  int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nlplan::cli
