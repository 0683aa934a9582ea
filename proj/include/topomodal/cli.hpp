#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topomodal::cli
{

enum ExitCode : int
{
    Holds = 0,
    Refuted = 1,
    UsageError = 2,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector< std::string >& args, std::ostream& out, std::ostream& err);

} // namespace topomodal::cli
