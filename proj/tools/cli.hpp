#ifndef CORPUSFORGE_TOOLS_CLI_HPP_
#define CORPUSFORGE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace corpusforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the corpusforge executable. `args` includes the program
// name. Machine-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace corpusforge::cli

#endif  // CORPUSFORGE_TOOLS_CLI_HPP_
