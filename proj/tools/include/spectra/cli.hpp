#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spectra {

enum ExitCode : int { kExitOk = 0, kExitInvalidArgs = 2, kExitNumeric = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_double_list(std::string_view text, char sep = ',');
std::vector<int> parse_mesh_list(std::string_view text);

/// Runs the `spectra` command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectra
