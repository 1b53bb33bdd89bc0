#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exind::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,    // I/O, parse or measure validation failure
  kBadFlags = 2,
  kDependent = 3,     // `check` only: criteria agree on dependence
  kDisagreement = 4,  // criteria disagree (implementation bug signal)
};

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exind::cli
