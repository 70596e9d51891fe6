#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qtk {

struct CatalogError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateReflectionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WireError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WidthMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonUnitaryError : std::logic_error {
  using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonTerminationError : std::runtime_error {
  NonTerminationError(const std::string& what, std::vector<int> log)
      : std::runtime_error(what), trial_log(std::move(log)) {}
  std::vector<int> trial_log;  // predicate slot value observed after each pass
};

struct ArithmeticError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace qtk
