#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shankslab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitVerification = 3,
  kExitIo = 4,
  // A moments run stopped early by --max-blocks; rerun to resume.
  kExitIncomplete = 5,
};

// Runs the command line; argv[0] is the program name. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shankslab::cli
