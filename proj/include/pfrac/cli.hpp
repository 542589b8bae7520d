#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfrac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

// Runs the command-line tool. `args` excludes the program name. The
// decomposition goes to `out` (unless --quiet) and to the output file;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfrac::cli
