#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace n2v::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericError = 3,
};

// args excludes the program name. Reports go to `out` unless --output is
// given; diagnostics and phase timings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace n2v::cli
