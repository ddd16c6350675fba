#ifndef SLICE_CLI_HPP
#define SLICE_CLI_HPP

#include <string>
#include <vector>

namespace slice {

/// Runs the CLI with the given arguments (argv[0] excluded). Factored out
/// of main() so command behavior is testable in-process.
int run_cli(const std::vector<std::string>& args);

} // namespace slice

#endif // SLICE_CLI_HPP
