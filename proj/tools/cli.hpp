#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace puiseux::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // usage errors and failed verify suites
inline constexpr int kValidation = 2;
inline constexpr int kTruncation = 3;
inline constexpr int kNotAMember = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace puiseux::cli
