#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skoskit::cli {

// Exit codes, a stable contract (sysexits.h values where one fits).
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kUsage = 64;
inline constexpr int kNoInput = 66;
inline constexpr int kInternal = 70;
inline constexpr int kCantCreate = 73;

/// Runs one subcommand. `args` excludes the program name. Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skoskit::cli
