#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace cavrep::cli {

// Entry point for the command-line surface. `args` excludes the program
// name. Returns the process exit code: 0 success, 2 configuration error,
// 3 internal consistency error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cavrep::cli
