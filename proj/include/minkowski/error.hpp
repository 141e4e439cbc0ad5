#pragma once

#include <stdexcept>
#include <string>

namespace minkowski {

// Raised when an input violates an operation's precondition.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minkowski
