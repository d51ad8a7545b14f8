#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sl2cert::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,         // certified, bounded-certified or constructed
  kRefuted = 1,    // refuted, obstructed, or the construction is impossible
  kUsage = 2,      // malformed arguments, words, matrices or documents
  kCheckFailed = 3 // a bounded check inside a construction failed
};

/// Runs one invocation. `args` excludes the program name. Documents go to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sl2cert::cli
