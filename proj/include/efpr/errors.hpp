#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace efpr {

/// Error categories double as process exit codes of the command line tool.
enum class ErrorCategory : int {
  config = 2,
  domain = 3,
  solver = 4,
  invariant = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

/// Invalid configuration or physical parameters. `key` names the offending
/// entry, `line` is 1-based when the error came from a file.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {},
                       std::optional<int> line = std::nullopt)
      : Error(ErrorCategory::config, what), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::optional<int> line() const noexcept { return line_; }

 private:
  std::string key_;
  std::optional<int> line_;
};

/// A density left the physical domain 0 < c, beta*c < 1 of the free energy.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what,
                       std::optional<std::size_t> cell = std::nullopt)
      : Error(ErrorCategory::domain, what), cell_(cell) {}

  std::optional<std::size_t> cell() const noexcept { return cell_; }

 private:
  std::optional<std::size_t> cell_;
};

/// A cell value outside the density window [c_m, c_M].
class BoundsViolation : public DomainError {
 public:
  BoundsViolation(const std::string& what, std::size_t cell, double value)
      : DomainError(what, cell), value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : Error(ErrorCategory::solver, what), history_(std::move(history)) {}

  /// Relative residual after each iteration.
  const std::vector<double>& residual_history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error(ErrorCategory::invariant, what) {}
};

}  // namespace efpr
