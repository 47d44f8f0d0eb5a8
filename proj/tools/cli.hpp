#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swq::cli {

// Exit codes: 0 success, 1 query error, 2 IO / format / usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitQuery = 1;
inline constexpr int kExitData = 2;

// Entry point shared by main() and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swq::cli
