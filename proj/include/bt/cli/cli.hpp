#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bt::cli {

/// Exit codes: every check passed, a check failed, bad usage or input.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs one command line, `args` excluding the program name. JSON goes to
/// `out` unless an output file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bt::cli
