#pragma once

#include <ostream>

namespace cohfreeze::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitViolation = 3;

/// Runs one command line. Reports go to `out` (or --out FILE), diagnostics
/// to `err`. Returns 0 on success, 2 on invalid input, 3 when a structural
/// verdict disagrees with the measured one.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohfreeze::cli
