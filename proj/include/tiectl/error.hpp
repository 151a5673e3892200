#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tiectl {

/// Malformed input text (profile, tournament, schedule, rule spec, policy).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A precondition of an operation was violated by its arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A resolver or decision log produced an answer the rule cannot accept.
class ResolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The control search hit its node budget before reaching an answer.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t nodes)
      : std::runtime_error("search budget exceeded after " + std::to_string(nodes) + " nodes"),
        nodes_(nodes) {}
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

}  // namespace tiectl
