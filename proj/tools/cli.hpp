#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netra::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kMissingFile = 2,
    kInvalidConfig = 3,
    kDecodeFailure = 4,
};

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Reports go to `out` or to --out; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netra::cli
