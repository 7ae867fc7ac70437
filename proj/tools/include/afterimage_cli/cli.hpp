#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afterimage::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 ok, 2 validation failure, 3 I/O error, 4 bad
/// arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afterimage::cli
