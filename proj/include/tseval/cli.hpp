#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tseval {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,  // submission incomplete or inconsistent (strict mode, validate)
  kExitError = 2,       // I/O, parse, schema or argument error
};

/// Name of the environment variable that overrides the default worker count.
inline constexpr const char* kWorkersEnv = "TSEVAL_WORKERS";

/// Entry point of the `tseval` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tseval
