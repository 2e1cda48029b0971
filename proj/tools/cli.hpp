#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsorep::cli {

/// Exit codes.
enum Exit : int {
  kPass = 0,
  kFail = 1,
  kUsage = 2,
  kUnsupported = 3,
  kIndeterminate = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` through a temp file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace qsorep::cli
