#pragma once

#include <string>
#include <vector>

namespace lmps {

/// Exit codes of the command-line front end.
enum ExitCode { kExitOk = 0, kExitError = 1, kExitInfeasible = 2, kExitRankDeficit = 3, kExitNoCongestion = 4 };

/// Runs the `lmps` command line; returns the process exit code.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);

/// ISO-8601 stamp of 5-minute interval t counted from 2008-01-01T00:00:00.
std::string interval_stamp(int t);

}  // namespace lmps
