#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fkn::cli {

/// Exit codes: 0 success, 1 domain error, 2 resource budget exceeded, 64 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
/// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fkn::cli
