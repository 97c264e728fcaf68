#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sosc::cli {

/// Process exit codes.
enum ExitStatus : int {
  kVerified = 0,
  kFalse = 1,
  kUnknown = 2,
  kInputError = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sosc::cli
