#pragma once

#include <string>
#include <vector>

namespace snncost {

inline constexpr const char* kToolVersion = "snncost 0.1.0";

// Full CLI entry point, callable in-process. `args` excludes the program
// name. Returns the process exit status: 0 on success, nonzero with a
// single-line stderr diagnostic on failure.
int run_cli(const std::vector<std::string>& args);

} // namespace snncost
