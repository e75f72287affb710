#pragma once

#include <iosfwd>

namespace anosograph::cli {

enum ExitCode : int {
  ok = 0,
  usage_error = 1,
  not_admissible = 2,
  verification_failed = 3,
  exhausted = 4,
};

/// Runs one command line (argv[0] is the program name); output goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anosograph::cli
