#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abelat::cli {

// Runs one command line (without the program name). Returns the exit code:
// 0 success, 1 domain error, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelat::cli
