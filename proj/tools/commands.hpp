// commands.hpp
// Entry point of the wwduality command-line tool, callable in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wwd::cli {

enum ExitCode : int {
    kSuccess = 0,
    kIoError = 1,
    kUsageError = 2,
    kVerificationFailed = 3,
};

/// Runs `wwduality <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wwd::cli
