#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace girthgen {

/// Malformed text input (edge lists, alist files, degree files).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// An enumeration or sampling job would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string &what, double required, double budget);

  double required() const { return required_; }
  double budget() const { return budget_; }

private:
  double required_;
  double budget_;
};

/// No pair can be added without creating a short cycle.
class NoSuitablePair : public std::runtime_error {
public:
  explicit NoSuitablePair(std::size_t step);
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

/// Every attempt of a retry loop ended in FAIL.
class RetriesExhausted : public std::runtime_error {
public:
  RetriesExhausted(std::size_t attempts, std::size_t last_failed_at);

  std::size_t attempts() const { return attempts_; }
  std::size_t last_failed_at() const { return last_failed_at_; }

private:
  std::size_t attempts_;
  std::size_t last_failed_at_;
};

} // namespace girthgen
