#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nestsim::cli {

enum ExitStatus : int { success = 0, check_failed = 1, bad_input = 2 };

inline constexpr std::uint64_t default_seed = 1;

// Runs one command line (args excludes the program name). Results go to
// `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nestsim::cli
