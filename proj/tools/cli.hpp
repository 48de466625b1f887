#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace obci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obci::cli
