#pragma once

// Command-line front end. Subcommands: count, repro, oracle, diag.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible input, 3 solver failure,
// 4 repro delta outside tolerance, 5 oracle state budget exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace latcount::cli {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kSolverFailure = 3,
  kReproMismatch = 4,
  kBudgetExceeded = 5,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace latcount::cli
