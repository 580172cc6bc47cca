#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bimod/error.hpp"

namespace bimod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNotTpc = 3;
inline constexpr int kExitProvisional = 4;
inline constexpr int kExitInternal = 5;

int exit_code_for(ErrorKind kind) noexcept;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; "-" reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bimod::cli
