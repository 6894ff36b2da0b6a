#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mapscope {

/// Exit codes: 0 success, 1 a verification suite failed, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (program name excluded) against the given streams.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mapscope
