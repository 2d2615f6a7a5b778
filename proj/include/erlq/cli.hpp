#pragma once

#include <ostream>

namespace erlq {

// Entry point of the command-line tool, separated from main() so tests can
// drive it in-process. Returns the process exit code: 0 success, 2 usage or
// parse error, 3 domain error, 4 numeric failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace erlq
