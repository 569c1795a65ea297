#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pluri::cli {

enum ExitCode : int {
  kPass = 0,
  kGeometricFailure = 1,
  kInputError = 2,
  kSizeGuard = 3,
};

/// Entry point of the pluri command; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same as above with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pluri::cli
