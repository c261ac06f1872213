#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treemine::cli {

// Exit codes: 0 success, 1 IO or input error, 2 usage error, 3 verify mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMismatch = 3;

// args excludes the program name. Reads stdin when --input is absent or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace treemine::cli
