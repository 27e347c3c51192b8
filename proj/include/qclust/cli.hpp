#pragma once

// Command-line frontend. Exit codes: 0 success, 1 verification failure or
// expansion residue, 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace qclust::cli {

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qclust::cli
