#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbern::cli {

enum ExitCode : int {
  kSuccess = 0,
  kIdentityFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that reads back to the same double.
std::string shortest_decimal(double v);

}  // namespace qbern::cli
