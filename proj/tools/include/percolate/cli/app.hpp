#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace percolate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitRuntime = 3;

// Parses argv, runs the selected subcommand and returns the exit code.
// Progress goes to standard error; data only to the files named by flags.
int run_cli(int argc, const char* const* argv);

// "1,2,3", "1-10" or a mix such as "1-3,8". Duplicates are rejected.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

// The command line as echoed into output files, without scheduling-only
// flags (--threads, --quiet) so that outputs do not depend on them.
std::string echo_invocation(int argc, const char* const* argv);

}  // namespace percolate::cli
