#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name). Every command
/// writes its outputs plus `<out>.manifest.json` atomically, and only after
/// the whole pipeline succeeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wro::cli
