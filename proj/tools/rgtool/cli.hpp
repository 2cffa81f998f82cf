#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgtool {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBudgetExhausted = 2,
  kInputError = 3,
};

/// Runs one invocation; args[0] is the program name. Everything the command
/// prints goes to `out` / `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgtool
