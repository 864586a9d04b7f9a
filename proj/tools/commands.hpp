#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzrel::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kSolver = 4,
  kIo = 5,
};

/// Runs the `fuzzrel` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzrel::cli
