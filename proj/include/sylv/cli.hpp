#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sylv::cli {

/// Process exit codes; stable across releases.
enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kSeparationViolated = 2,
    kResidualFailure = 3,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sylv::cli
