// phitool subcommands. run_cli parses arguments (without the program name)
// and returns the process exit code:
//   0 ok, 1 verification failed, 2 bad configuration, 3 accuracy budget missed.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace phitool {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

/// Bumped whenever a JSON key or CSV column changes.
inline constexpr int kSchemaVersion = 1;

/// Relative --out paths are resolved against this directory when it is set.
inline constexpr const char* kOutputDirEnv = "PHITOOL_OUTPUT_DIR";

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phitool
