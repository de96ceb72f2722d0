#pragma once

#include <ostream>

namespace labelnoise::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kNonConvergence = 3,
};

/// Runs one command line (argv[0] is the program name). Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace labelnoise::cli
