#pragma once

#include <string>
#include <vector>

namespace lowlying::cli {

// Parses argv (without the program name), dispatches to the library, writes
// the serialized report to --output or stdout.  Exit codes: 0 success, 2
// parameter constraint violation (message names the inequality), 1 internal
// numeric failure, 64 usage / unknown subcommand.
int run(const std::vector<std::string>& args);

} // namespace lowlying::cli
