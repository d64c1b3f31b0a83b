#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace raysplit::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kValidation = 3,
  kIo = 4,
  kComputation = 5,
};

inline constexpr int kSchemaVersion = 1;

/// Runs one command line. `args` excludes the program name. Tables go to the
/// --out file or `out`; errors are written to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace raysplit::cli
