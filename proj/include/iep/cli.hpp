#pragma once

#include <string>
#include <vector>

namespace iep::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kResourceCap = 3 };

struct CommandOutcome {
  int exit_code = kOk;
  /// Standard output (may be binary for `coeffs --format bin`).
  std::string rendered;
  /// One-line diagnostics for standard error.
  std::string diagnostics;
};

/// Runs one command; args excludes the program name. Never throws.
CommandOutcome run(const std::vector<std::string>& args);

}  // namespace iep::cli
