#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zerosum {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-side mistakes: unmet preconditions, malformed literals, bad flags.
class UsageError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Elements of different groups (or malformed coordinate vectors) mixed.
class DimensionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// A sequence of length >= D without any zero-sum subsequence: the supplied
// Davenport constant cannot be right for this group.
class InconsistentDavenportError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A configured search or memory ceiling was hit.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t nodes_visited = 0)
      : Error(what), nodes_visited_(nodes_visited) {}

  std::uint64_t nodes_visited() const noexcept { return nodes_visited_; }

 private:
  std::uint64_t nodes_visited_;
};

// A proven statement failed to hold. Always an implementation bug.
class SoundnessAlarm : public Error {
 public:
  using Error::Error;
};

}  // namespace zerosum
