#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coulombium::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNotConverged = 2,
  kSubcritical = 3,
};

/// Runs one command line. Results go to `out` unless --out names a file;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coulombium::cli
