#pragma once

#include <iosfwd>

namespace gtank::cli {

/// Parses argv, runs one subcommand and writes its record to `out`;
/// diagnostics go to `err`. Returns the process exit code:
/// 0 success, 2 usage error, 3 check failure, 4 resource cap.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gtank::cli
