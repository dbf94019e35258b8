#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hml {

/// Full command-line driver. `args` excludes the program name. Reports go
/// to `out` (or the file named by --out); diagnostics go to `err`.
/// Exit codes: 0 success / all checks pass, 1 verification or output
/// failure, 2 usage or domain error, 3 numerical non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace hml
