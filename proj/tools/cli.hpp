#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathsdd::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsageError = 2,
  kOracleMismatch = 3,
};

/// Runs one invocation. `args` excludes the program name. A single JSON
/// document goes to `out`; usage text goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathsdd::cli
