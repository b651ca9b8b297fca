#ifndef SPHCODES_TOOLS_CLI_HPP
#define SPHCODES_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sphcodes::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kCodeFileFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;     // failed verdict or domain error
inline constexpr int kUsageError = 2;  // bad arguments or malformed input file

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands a grid value list: comma separated items, each a scalar or an
/// inclusive integer range `a..b`.
std::vector<std::string> expand_grid_values(std::string_view spec);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view field);

}  // namespace sphcodes::cli

#endif  // SPHCODES_TOOLS_CLI_HPP
