#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace surfex {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitSolver = 4,
};

// Subcommands: complete, inpaint, convergence, dump-system. args excludes
// the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace surfex
