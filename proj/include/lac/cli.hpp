#pragma once

// Command dispatch for the lacalc tool.
//
//   lacalc --model <path> [--json] [--force] [--fiber-prefix <p>] <command> [operands...]
//
// Exit codes: 0 success, 1 a verification failed, 2 usage, parse or
// mismatch error.

#include <ostream>
#include <string>
#include <vector>

namespace lac::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

/// `args` excludes the program name.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lac::cli
