#pragma once

#include <string>
#include <vector>

namespace mert {

// Exit-status contract shared by the binary and the test harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Thread count used when --threads is "auto": MERTENS_THREADS if set and
// positive, otherwise the hardware concurrency (at least 1).
unsigned default_threads();

// Full command-line front end; argv[0] is the program name.
int run(int argc, const char* const* argv);

// Convenience overload for in-process tests; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace mert
