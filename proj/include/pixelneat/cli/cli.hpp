#pragma once

#include <iosfwd>

namespace pixelneat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;   // bad config, arguments or input files
inline constexpr int kExitRuntime = 3;  // failure while running

// Entry point behind the `pixelneat` binary. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pixelneat::cli
