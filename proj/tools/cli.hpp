#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pomlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

/// Runs one pomlab command. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace pomlab::cli
