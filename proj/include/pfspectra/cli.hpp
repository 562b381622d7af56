#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pfspectra/numeric.hpp"

namespace pfs {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
  kExitExact = 4,
  kExitResource = 5,
  kExitIo = 6,
};

/// "a", "a,b", "a+bi", "-bi", "i". Throws InvalidArgument.
Complex parse_complex(const std::string& text);

/// "12,16,20" or "3..14" (inclusive). Throws InvalidArgument.
std::vector<int> parse_periods(const std::string& text);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfs
