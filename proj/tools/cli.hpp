#pragma once

#include <iosfwd>

namespace hammerstein::cli {

/// Exit codes: 0 success, 2 invalid configuration or arguments, 3 solver failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hammerstein::cli
