#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistrank::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kDomain = 3,
    kInternal = 4,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistrank::cli
