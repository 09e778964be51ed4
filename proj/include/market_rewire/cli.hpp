#pragma once

#include <iosfwd>

namespace market_rewire::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the `market-rewire` tool. Subcommands: `run`, `gen-synthetic`.
/// Reads MARKET_REWIRE_THREADS to cap parallelism.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace market_rewire::cli
