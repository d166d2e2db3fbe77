#pragma once

#include <string>
#include <vector>

namespace slotentropy::cli {

// Full command-line entry point. Exit codes: 0 success, 1 input/config error,
// 2 empty analysis set, 3 internal invariant violation.
int run(const std::vector<std::string>& args);

}  // namespace slotentropy::cli
