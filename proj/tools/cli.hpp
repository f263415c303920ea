#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace redraw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

/// Entry point of the `redraw` command line tool. `args` excludes the
/// program name. Normal output goes to `out`, diagnostics and progress to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redraw::cli
