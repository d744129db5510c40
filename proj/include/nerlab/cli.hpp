#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nerlab::cli {

/// Exit statuses of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool. `args` excludes the program name. Reports go to `out` (or
/// --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace nerlab::cli
