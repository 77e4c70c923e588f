#ifndef CARTIER_CLI_HPP
#define CARTIER_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cartier::cli
{

inline constexpr const char *kToolName = "cartier-lab";
inline constexpr const char *kVersion = "0.3.0";

// Exit codes: 0 success, 1 mathematical rejection (with a report on `out`),
// 2 usage or IO error (message on `err`).
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Cap on --N and on truncations read from input; CARTIER_LAB_MAX_N or 16.
unsigned max_truncation();

} // namespace cartier::cli

#endif
