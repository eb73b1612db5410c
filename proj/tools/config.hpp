// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a `key = value` text file whose entries can be
// overridden from the command line.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlplan/error.hpp"
#include "nlplan/metrics.hpp"

namespace nlplan::cli {

// A referenced file does not exist.
class MissingFileError : public Error {
 public:
  using Error::Error;
};

// Bad flag or config value.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::filesystem::path domain;
  std::string problems;  // glob, e.g. data/blocksworld/problems/*.pddl
  std::optional<std::filesystem::path> templates;
  std::optional<std::filesystem::path> gold_plans;
  std::optional<std::filesystem::path> thoughts;
  std::optional<std::filesystem::path> thought_seed;
  std::vector<Approach> approaches{std::begin(kAllApproaches), std::end(kAllApproaches)};
  std::string backend = "mock";
  std::optional<std::filesystem::path> recording;
  std::optional<std::filesystem::path> mock_script;
  std::optional<std::filesystem::path> cache;
  std::optional<std::filesystem::path> record;
  std::uint64_t seed = 0;
  std::size_t step_limit = 24;
  double time_limit = 600.0;
  std::size_t runs = 5;
  std::size_t jobs = 0;  // 0: one per logical core
  std::filesystem::path out = "out";
};

// Raw `key = value` pairs. `#` starts a comment; values may be quoted.
// Throws UsageError on malformed lines.
std::map<std::string, std::string> parse_key_values(const std::string& text);

// Applies `values` on top of `config`. Relative paths are resolved against
// `base_dir`. Throws UsageError on unknown keys or bad values.
void apply_values(ExperimentConfig& config, const std::map<std::string, std::string>& values,
                  const std::filesystem::path& base_dir = {});

ExperimentConfig load_config(const std::filesystem::path& path);

// Throws MissingFileError or UsageError.
void validate(const ExperimentConfig& config);

// Sorted paths matching a shell glob.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

std::vector<Approach> parse_approaches(const std::string& list);

}  // namespace nlplan::cli
