#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace claro {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the `claro` command line. `args` excludes the program name; `in` is
/// read when a text argument is "-" or omitted.
int run_cli(const std::vector<std::string>& args, std::istream& in = std::cin, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace claro
