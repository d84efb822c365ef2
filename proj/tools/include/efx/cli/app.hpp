#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace efx::cli {

enum ExitCode : int {
  kOk = 0,
  kRefuted = 1,
  kInputError = 2,
  kInternalError = 3,
};

/// Runs the efx command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efx::cli
