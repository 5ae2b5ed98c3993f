#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace denseflock {

/// Malformed or out-of-contract numeric input (non-finite coordinates, empty sets).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter or configuration constraint violation. `key` names the offending field
/// and `line` the config line (0 when not from a file).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::string key = {}, std::size_t line = 0)
      : std::runtime_error(message), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

/// A violated operation precondition (e.g. asking for the Fiedler value of a digraph).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite state produced while advancing the system.
class IntegrationFault : public std::runtime_error {
 public:
  IntegrationFault(const std::string& message, std::size_t step)
      : std::runtime_error(message + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace denseflock
