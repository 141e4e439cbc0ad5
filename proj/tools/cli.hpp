#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minkowski::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

// Runs one subcommand. args excludes the program name. The JSON report goes to
// `out` unless --report names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minkowski::cli
