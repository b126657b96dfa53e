#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kronspin::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1; // a verification check did not pass
inline constexpr int kExitUsage = 2;       // bad arguments or unparsable input
inline constexpr int kExitCapacity = 3;    // size overflow or allocation failure
inline constexpr int kExitEngine = 4;      // dense engine asked for more than the dense cap
inline constexpr int kExitConvergence = 5; // iterative solver did not converge

// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kronspin::cli
