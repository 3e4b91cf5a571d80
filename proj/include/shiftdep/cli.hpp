#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftdep::cli {

/// Exit statuses of run().
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kArgumentError = 2;
inline constexpr int kResourceError = 3;

/// Entry point behind the `shiftdep` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Fixed-point decimal with `digits` places after the point.
std::string fixed(double v, int digits);

}  // namespace shiftdep::cli
