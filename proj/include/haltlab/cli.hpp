#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace haltlab {

/// Exit-code contract, stable for scripting:
///   0 success, 1 expected finding (no consistent model, counterexample
///   found), 2 usage error, 3 internal fault.
enum ExitStatus : int {
  kExitOk = 0,
  kExitFinding = 1,
  kExitUsage = 2,
  kExitInternal = 3,
};

/// Runs a command line (without argv[0]). Reports go to `out`,
/// diagnostics to `err`. The binary in tools/ is a thin wrapper; tests
/// call this directly and assert on bytes.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace haltlab
