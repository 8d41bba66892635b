#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhd::cli {

enum ExitCode : int {
    Success = 0,
    Negative = 1,
    UsageError = 2,
    BudgetExceeded = 3,
};

/// Parses argv (argv[0] is the program name) and runs one subcommand.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

} // namespace qhd::cli
