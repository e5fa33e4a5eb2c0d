#pragma once

#include <ostream>

namespace vfstl::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kNotSatisfied = 1;  // monitor: rho <= 0
inline constexpr int kParseError = 2;
inline constexpr int kSignalTooShort = 3;
inline constexpr int kInvalidInput = 4;  // missing files, bad config, bad data
inline constexpr int kGuardViolation = 5;
inline constexpr int kUsage = 64;
}  // namespace exit_code

/// Entry point of the vfstl binary. Subcommands: monitor, collect, train,
/// plan, mpc, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vfstl::cli
