#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abelsplit {

/// Exit codes shared by all commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitDisagreement = 1,
  kExitInvalid = 2,
  kExitBudget = 3,
  kExitVerification = 4,
  kExitNotSplit = 5,
};

/// The abelsplit command line; args excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelsplit
