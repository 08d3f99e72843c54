#pragma once

#include <iosfwd>

namespace rankhash::cli {

// Process exit status classes.
enum ExitCode : int {
  kOk = 0,
  kOtherError = 1,
  kConfigError = 2,        // bad flags, bad config, invalid parameters
  kDataError = 3,          // unreadable or malformed input, dimension mismatch
  kIncompatibleError = 4,  // cross-parameter templates, reused seed
};

/// Entry point shared by the executable and the integration tests. Reports
/// go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankhash::cli
