#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frackell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitCheckFailed = 4;

/// Runs one command line. `args` excludes the program name. `env_digits`
/// is the value of FRACKELL_DIGITS, or nullptr when unset; --digits wins.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* env_digits = nullptr);

}  // namespace frackell::cli
