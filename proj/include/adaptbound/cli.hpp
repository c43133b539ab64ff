#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adaptbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the executable and the tests. args excludes the
// program name. Reports go to out (or --out); diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version() noexcept;

} // namespace adaptbound::cli
