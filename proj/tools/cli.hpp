#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trustbias::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,   ///< missing/unreadable/malformed input
  kConfigError = 3,  ///< invalid flags or parameter values
};

/// Runs one CLI invocation. `args` excludes the program name. Score files and
/// reports go to `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trustbias::cli
