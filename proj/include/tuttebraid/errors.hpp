#pragma once

#include <stdexcept>
#include <string>

namespace tuttebraid {

/// Input violates an operation's precondition (bad vertex, odd strand count, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed textual input (numbers, braid words, DIMACS, JSON payloads).
class ParseError : public PreconditionError {
 public:
  explicit ParseError(const std::string& what) : PreconditionError(what) {}
};

/// A configured size cap was exceeded; the computation was refused rather than truncated.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace tuttebraid
