#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bitswap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnsupported = 3;

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out` unless --out is given; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bitswap::cli
