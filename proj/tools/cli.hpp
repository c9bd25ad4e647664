#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wfoc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;

// Runs one command line (args excludes the program name). Normal output goes
// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// WFOC_MAXLEN, or 8 when unset or malformed.
std::size_t sweep_cap();

}  // namespace wfoc::cli
