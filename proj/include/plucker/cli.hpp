#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plucker {

// Exit codes: 0 success, 1 usage or domain error, 2 resource budget,
// 3 a verification assertion failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitFailed = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plucker
