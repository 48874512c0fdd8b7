#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plreach::cli {

/// Exit status contract of the command-line tool.
enum Exit : int {
  kAccept = 0,       ///< Sat / Holds / Equivalent / pass
  kReject = 1,       ///< Unsat / Violated / Distinct / fail
  kUsage = 2,        ///< bad flags, unreadable or malformed input
  kUnsupported = 3,  ///< an activation or construction outside the supported set
  kBudget = 4,       ///< the node budget ran out
};

/// Runs one command; args[0] is the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plreach::cli
