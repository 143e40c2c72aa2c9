#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ftnsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitOutput = 4,
};

/// Runs one invocation. `args` excludes the program name. Failures print a
/// single line "error: code=<kind> message=<text>" to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftnsim
