#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linksched {

// Caller passed an argument outside an operation's domain (bad node id,
// enumeration bound exceeded, empty policy list).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Generator or model parameters that cannot produce a valid object.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. `line()` is 1-based; 0 means "whole document".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A schedule or state that breaks the interference/queue invariants.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace linksched
