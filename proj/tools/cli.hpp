#ifndef POSNORM_TOOLS_CLI_HPP_
#define POSNORM_TOOLS_CLI_HPP_

#include <ostream>

namespace posnorm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitViolation = 3;

// Entry point of the `posnorm` tool with injectable streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace posnorm::cli

#endif  // POSNORM_TOOLS_CLI_HPP_
