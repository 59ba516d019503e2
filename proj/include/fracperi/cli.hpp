#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracperi {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Command-line entry point: body | perim | sweep | sobolev | gamma.
/// `args` excludes the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fracperi
