#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "difflat/error.hpp"

namespace difflat::cli {

enum ExitCode : int { kSuccess = 0, kToleranceBreach = 1, kUsageError = 2 };

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace difflat::cli
