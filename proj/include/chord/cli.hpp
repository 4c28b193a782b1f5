#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chord::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Environment variable that relocates relative --output paths.
inline constexpr const char* kOutputDirEnv = "CHORDLAB_OUTPUT_DIR";

enum ExitCode : int { kOk = 0, kUsage = 1, kCapacity = 2, kVerification = 3, kTimeout = 4 };

/// Runs one command line (args excludes the program name). Table output goes
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chord::cli
