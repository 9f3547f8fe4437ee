#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbounds {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolated = 1,
  kExitUsage = 2,  // parse or spec error
  kExitIndeterminate = 3,
  kExitNotApplicable = 4,
};

// Runs the qbounds command line. args excludes the program name. `env_opts`
// plays the role of QBOUNDS_OPTS: its flags are used only when the subcommand
// knows them and args does not already set them.
int run_cli(const std::vector<std::string>& args, const std::string& env_opts, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace qbounds
