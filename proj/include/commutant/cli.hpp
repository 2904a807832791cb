#ifndef COMMUTANT_CLI_HPP
#define COMMUTANT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace commutant::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kVerifyFailed = 4 };

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace commutant::cli

#endif  // COMMUTANT_CLI_HPP
