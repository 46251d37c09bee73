#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathsdd {

/// Stable error codes surfaced by the CLI.
enum class ErrorCode {
  Parse,           // E_PARSE
  Cycle,           // E_CYCLE
  Degenerate,      // E_DEGENERATE
  UnsatCondition,  // E_UNSAT_CONDITION
  Range,           // E_RANGE
  OracleMismatch,  // E_ORACLE_MISMATCH
};

std::string_view to_string(ErrorCode code);

/// Domain error. `location()` is empty when the error is not tied to an input
/// position, otherwise something like "line 3".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(code), location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace pathsdd
