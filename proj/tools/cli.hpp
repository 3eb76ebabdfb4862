#pragma once

#include <ostream>
#include <span>
#include <string>

namespace rssiest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the directory for the default sweep output.
inline constexpr const char* kOutputDirEnv = "RSSIEST_OUTPUT_DIR";

// args[0] is the program name. Returns the process exit status: 0 on
// success, 1 when a `verify` check fails (or a runtime error such as I/O),
// 2 for malformed flags or an invalid sweep specification.
int parse_and_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rssiest::cli
