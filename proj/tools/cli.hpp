#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hvlab::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kInternal = 3,  // a classification trichotomy or construction invariant broke
};

/// Runs one command; `args` excludes the program name. Reports go to `out`
/// (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hvlab::cli
