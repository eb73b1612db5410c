// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nlplan {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed PDDL text. Carries the 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Well-formed PDDL that uses a construct outside the STRIPS fragment.
class UnsupportedFeatureError : public Error {
 public:
  UnsupportedFeatureError(const std::string& construct, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) +
              ": unsupported PDDL feature '" + construct + "'"),
        construct_(construct) {}

  const std::string& construct() const noexcept { return construct_; }

 private:
  std::string construct_;
};

// Referential or structural inconsistency (unknown predicate, arity mismatch, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Contract violation inside the domain engine (e.g. applying an inapplicable action).
class EngineError : public Error {
 public:
  using Error::Error;
};

// A template is missing or an LLM response could not be turned into a valid one.
class TemplateError : public Error {
 public:
  using Error::Error;
};

// Few-shot construction or thought generation could not be completed.
class HarnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlplan
