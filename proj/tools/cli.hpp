#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foliate::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDisagreement = 1;
inline constexpr int kJacobiFailure = 2;
inline constexpr int kBadInput = 3;
inline constexpr int kConstraintViolation = 4;

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foliate::cli
