#pragma once

#include <ostream>

namespace buoyancy::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

/// Runs one buoyancy-lab invocation. Data goes to `out` (or the --out file),
/// status lines and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace buoyancy::cli
