#include "girthgen/errors.hpp"

namespace girthgen {

ParseError::ParseError(const std::string &what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) +
                         (column ? ", column " + std::to_string(column) : std::string()) + ": " +
                         what),
      line_(line), column_(column) {}

BudgetExceeded::BudgetExceeded(const std::string &what, double required, double budget)
    : std::runtime_error(what), required_(required), budget_(budget) {}

NoSuitablePair::NoSuitablePair(std::size_t step)
    : std::runtime_error("no suitable pair at step " + std::to_string(step)), step_(step) {}

RetriesExhausted::RetriesExhausted(std::size_t attempts, std::size_t last_failed_at)
    : std::runtime_error("all " + std::to_string(attempts) +
                         " attempts failed (last at step " + std::to_string(last_failed_at) + ")"),
      attempts_(attempts), last_failed_at_(last_failed_at) {}

} // namespace girthgen
