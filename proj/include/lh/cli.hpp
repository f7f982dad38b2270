#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lh::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kMismatch = 2 };

/// Runs the `lh` command line; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count from LH_THREADS, or 1 when unset or invalid.
unsigned env_threads();

}  // namespace lh::cli
