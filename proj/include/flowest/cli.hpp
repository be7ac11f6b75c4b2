#ifndef FLOWEST_CLI_HPP_
#define FLOWEST_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace flowest::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitEstimatorFailure = 3;

/// Runs `flowest <subcommand> ...`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flowest::cli

#endif
