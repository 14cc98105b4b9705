#ifndef SCALEFN_CLI_HPP
#define SCALEFN_CLI_HPP

namespace scalefn {

// Entry point of the command-line tool; returns the process exit code.
// 0 success, 1 validation/usage failure, 2 nonconvergence.
int run_cli(int argc, const char* const* argv);

} // namespace scalefn

#endif
