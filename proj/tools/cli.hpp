#pragma once

#include <string>
#include <vector>

namespace absg::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "ABSG_OUTPUT_DIR";

// Full command-line surface; argv without the program name.
// Exit status: 0 success, 1 runtime failure (including a failing verify
// suite), 2 validation error.
int dispatch(const std::vector<std::string>& args);

}  // namespace absg::cli
