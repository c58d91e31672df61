#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contrastlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

// Runs the command line (without the program name) and returns the exit
// code. Output goes to `out`; diagnostics and warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ".013", "< .001", "> .999".
std::string format_p(double p);

}  // namespace contrastlab
