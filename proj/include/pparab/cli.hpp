#pragma once

#include "pparab/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pparab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Runs one validated experiment. The CSV goes to config.out, or to `out`
/// when no path is set; summary lines start with "# " and go to `out`.
/// Exit status: 0 success, 1 experiment-level failure, 2 bad input detected
/// at run time.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Full command line front end; argv[0] is the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The text printed by --help: every subcommand and every flag.
std::string help_text();

}  // namespace pparab::cli
