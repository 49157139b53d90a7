#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hexfourier::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

// Runs the command line `args` (program name excluded). Tables go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hexfourier::cli
