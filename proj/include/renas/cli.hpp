#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace renas {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // usage, index, parse, schema or project errors
inline constexpr int kExitUnresolved = 2;   // the seed declaration could not be resolved

// Runs the `renas` command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace renas
