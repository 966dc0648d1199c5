#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< solver budget exhausted, I/O failure
inline constexpr int kExitUsage = 2;    ///< bad flags or malformed input files
inline constexpr int kExitNoMle = 3;    ///< MLE does not exist / sequence not graphic

inline constexpr const char* kVersion = "0.1.0";

/// Runs one invocation. `args` excludes the program name. JSON results go to
/// `out`, one-line diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxent::cli
