#pragma once

#include <stdexcept>
#include <string>

namespace percolate {

// A checked runtime invariant failed. Always a bug or misuse, never a
// recoverable condition.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace percolate
