#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dslut {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoMatch = 1; ///< NOMATCH or infeasible (e.g. unmappable)
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;

/// Runs one `dslut` command line (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dslut
