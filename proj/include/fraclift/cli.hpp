#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraclift::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1; // verification failure or numerical error
inline constexpr int kUsage = 2;   // bad flags or unusable input

// Runs one command. args excludes the program name. Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fraclift::cli
