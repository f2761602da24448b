#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace intentest::cli {

enum ExitCode : int { kOk = 0, kFailures = 1, kUsage = 2, kEnvironment = 3 };

/// Runs one command line (args exclude the program name).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3,5,7,9", "5..10" or mixtures such as "3,5..7".
std::vector<int> parse_int_list(const std::string& spec);

/// Installs a SIGINT handler that requests a graceful stop of running benchmarks.
void install_interrupt_handler();

}  // namespace intentest::cli
