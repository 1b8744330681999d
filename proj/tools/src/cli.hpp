#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
    kOk = 0,
    kRainbowFound = 1,
    kIndeterminate = 2,
    kInvalidInstance = 3,
    kIoError = 4,
    kUsage = 64,
};

/// Runs the CLI on argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rainbow::cli
