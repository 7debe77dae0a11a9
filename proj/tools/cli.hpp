#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqz::cli {

enum ExitCode : int { ok = 0, config_error = 2, numerical_error = 3, io_error = 4 };

// Runs one invocation of the command-line tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqz::cli
