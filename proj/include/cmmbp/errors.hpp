#pragma once

#include <stdexcept>
#include <string>

namespace cmmbp {

enum class Errc {
  NonPositiveWeight,
  DimensionMismatch,
  SelfLoop,
  DuplicateEdge,
  BadEndpoint,
  EmptySet,
  OddVertexCount,
  MissingVariable,
  UnknownVariableName,
  ParseError,
  InfeasibleBisection,
  InfeasibleAssignment,
  BadConfig,
};

/// Library error with a machine-checkable code. Parse errors carry the
/// offending 1-based line number where known (0 otherwise).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, int line = 0)
      : std::runtime_error(what), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  int line() const noexcept { return line_; }

 private:
  Errc code_;
  int line_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what, int line = 0) {
  throw Error(code, what, line);
}

}  // namespace cmmbp
