#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pinchcert::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Runs one command line (without the program name). PINCH_SEED is read from
/// the environment when --seed is absent.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinchcert::cli
