#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bmgcli {

// Exit codes (sysexits-style for usage/input errors).
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUndecided = 2;
inline constexpr int kExitEof = 3;         // interactive aborted on end of input
inline constexpr int kExitEmptyLevel = 4;  // antichain tree ran out of moves
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitIo = 74;

/// Runs the command line given by `args` (without the program name).
/// Interactive input comes from `in`; normal and diagnostic output go to
/// `out` / `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace bmgcli
