#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kanon::cli {

enum Exit : int { Ok = 0, NotAnonymous = 1, Usage = 2, Infeasible = 3, Internal = 4 };

// Runs one command line (args[0] is the program name) and returns the exit
// status. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kanon::cli
