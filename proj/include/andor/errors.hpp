#pragma once

#include <stdexcept>
#include <string>

namespace andor {

// Malformed input text. Positions are 1-based.
struct ParseError : std::runtime_error {
  ParseError(std::string message, int line, int col)
      : std::runtime_error(message + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// A path or node reference that does not exist in the tree at hand.
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition violation: wrong tree class, non-admissible distribution,
// instance over the configured size bound, and the like.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace andor
