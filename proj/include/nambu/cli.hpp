#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nambu::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kNumericFailure = 3,
};

/// Runs the `nambu` command line (args exclude the program name). Reports go
/// to `out` unless an output file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nambu::cli
