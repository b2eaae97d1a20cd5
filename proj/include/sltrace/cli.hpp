#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sltrace {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;     // parse, usage, or IO error
inline constexpr int kExitRun = 2;       // stuck or out of fuel under `run`
inline constexpr int kExitReject = 3;    // monitor rejection
inline constexpr int kExitFailure = 4;   // scenario, fuzz, or axiom failure

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sltrace
