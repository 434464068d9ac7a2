#pragma once

// Command-line front end. run() never writes to the process streams; the
// caller prints out/err. On any error `out` is empty.

#include <string>
#include <vector>

namespace fourpoly::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,   ///< a verification failed or formula and enumeration disagree
  kUsage = 2,
  kCoverage = 3,  ///< table/truncation coverage or resource limit
};

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Environment variable naming a directory for the class-table cache.
inline constexpr const char* kCacheDirEnv = "FOURPOLY_CACHE_DIR";

/// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace fourpoly::cli
