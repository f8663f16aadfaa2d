#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace endobench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the executable and the tests. argv[0] is the
// program name. Warnings are routed to `err` for the duration of the call.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endobench::cli
