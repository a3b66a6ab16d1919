#pragma once

#include <ostream>
#include <span>
#include <string>

namespace ea::tools {

// Runs the ea command line; args excludes the program name.
// Exit codes: 0 success or "yes", 1 violation or "no", 2 input error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ea::tools
