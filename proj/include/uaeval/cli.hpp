#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uaeval::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,  // bad flags, bad input data, malformed files
  kIoError = 2,     // unreadable/unwritable paths
  kInternalError = 3,
};

/// Relative --out paths are resolved against this directory when it is set.
inline constexpr const char* kOutputDirEnv = "UAEVAL_OUTPUT_DIR";

/// Entry point behind the `uaeval` binary. Data goes to `out` (or files),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uaeval::cli
