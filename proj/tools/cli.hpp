#ifndef GAT_TOOLS_CLI_HPP
#define GAT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gat::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // type error, equation fails, not convertible
inline constexpr int kUsage = 2;   // bad flags, unreadable files

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gat::cli

#endif
