#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphcd {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitViolation = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
/// Reports go to --output when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphcd
