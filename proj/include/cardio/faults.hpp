#pragma once

#include <stdexcept>
#include <string>

namespace cardio {

// Scenario text could not be parsed or failed semantic validation.
// Carries a 1-based line/column so the CLI can point at the offender.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string message, int line = 0, int column = 0)
        : std::runtime_error(line > 0
              ? "line " + std::to_string(line) + ", column "
                  + std::to_string(column) + ": " + message
              : message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// An automaton received an event that has no transition from its current
// state. This always indicates a wiring bug in the driving code, never a
// property of the input, so it is an exception rather than a status code.
class SimulationFault : public std::runtime_error {
public:
    explicit SimulationFault(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace cardio
