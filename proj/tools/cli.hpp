#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gwc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kCorrupt = 4,
};

/// Runs one command line (without the program name). CSV and stats go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwc::cli
