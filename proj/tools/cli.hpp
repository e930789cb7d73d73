#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace starlike::cli {

/// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "STARLIKE_OUT_DIR";

/// Runs one command; `args` excludes the program name. Artifacts go to
/// --out (or $STARLIKE_OUT_DIR/<command>.<ext>, or `out`); failures are
/// reported as a JSON object on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace starlike::cli
