#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wearsim::cli {

enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kValidationError = 2,
    kUsage = 64,
};

/// Entry point behind the `wearsim` binary. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wearsim::cli
