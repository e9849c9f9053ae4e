#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ul::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInputError = 2;
inline constexpr int kWitnessFound = 3;

// Runs one ulab command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ul::cli
