#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dirac3t::cli {

// Runs a full command line (without argv[0]); returns the process exit code:
// 0 success, 1 domain error (machine-readable {"error": ...} on stdout),
// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac3t::cli
