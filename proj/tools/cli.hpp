#ifndef ELLIDIFF_TOOLS_CLI_HPP
#define ELLIDIFF_TOOLS_CLI_HPP

#include <iosfwd>

namespace ellidiff
{

/// Exit codes: 0 every check passed, 1 a check failed, 2 bad configuration or usage.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

/// The `ellidiff` command; output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ellidiff

#endif
