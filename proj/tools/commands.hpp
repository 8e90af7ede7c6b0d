#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isr::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_yes = 0;
inline constexpr int exit_no = 1;
inline constexpr int exit_error = 2;
inline constexpr int exit_resource = 3;

/// Runs one command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace isr::cli
