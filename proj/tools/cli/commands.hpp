#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perfro::cli {

/// Process exit codes.
enum ExitCode : int {
  kHolds = 0,      // property holds / success
  kFails = 1,      // property fails (a valid negative result)
  kUsageError = 2  // usage, parse or numerical error
};

/// Runs the command line `args` (args[0] is the program name). Reports go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perfro::cli
