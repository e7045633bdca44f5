#pragma once

#include <string>
#include <vector>

namespace sta::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes: 0 success, 1 runtime or tolerance failure, 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace sta::cli
