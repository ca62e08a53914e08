#ifndef QGS_CLI_HPP_
#define QGS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qgs {

/// Runs the command line. Exit codes: 0 success, 1 failed self-check,
/// 2 invalid input or usage, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgs

#endif  // QGS_CLI_HPP_
