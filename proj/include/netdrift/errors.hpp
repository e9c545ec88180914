#pragma once

#include <stdexcept>
#include <string>

namespace netdrift {

// Problems with input data: unparsable files, invariant-violating edges,
// graphs that do not satisfy an operation's structural preconditions.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A bounded computation budget was exhausted (retry limits, enumeration guards).
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace netdrift
