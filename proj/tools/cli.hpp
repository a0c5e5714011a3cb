#ifndef UPSHARP_TOOLS_CLI_HPP
#define UPSHARP_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace upsharp::cli {

enum ExitCode { ok = 0, verification_failed = 1, usage = 2, computational = 3 };

/// Runs one command line (without the program name). Reports go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3", "1..10" or "2,3,5" (ranges and lists may mix: "1..3,7").
std::vector<int> parse_int_list(const std::string& text);
/// "0.25,1,4"
std::vector<double> parse_double_list(const std::string& text);

}  // namespace upsharp::cli

#endif  // UPSHARP_TOOLS_CLI_HPP
