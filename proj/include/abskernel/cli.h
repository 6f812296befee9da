#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abskernel {

// Exit codes of the solve command.
inline constexpr int kExitYes = 10;
inline constexpr int kExitNo = 20;
inline constexpr int kExitError = 1;
inline constexpr int kExitBudget = 2;

// Runs the command line (without the program name).  Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abskernel
