#ifndef KVAR_CLI_HPP
#define KVAR_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace kvar {

// Runs the command-line interface. Returns the process exit code:
// 0 success / all checks match, 1 usage or input error (including a
// reduction Failure), 2 verification mismatch.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kvar

#endif
