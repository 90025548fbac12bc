#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dichot {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  ///< verification mismatch or internal inconsistency
  kExitUsage = 2,    ///< bad arguments or a violated precondition
};

/// Entry point of the `dichot` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace dichot
