#pragma once

#include <iosfwd>

namespace basisorder {

/// Exit codes of the basisorder CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitEngine = 2,
  kExitBoundViolation = 3,
};

/// Entry point of the `basisorder` tool; streams are injected so the tool can
/// be driven in-process by tests.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace basisorder
