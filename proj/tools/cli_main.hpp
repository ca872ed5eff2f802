#ifndef SEMIBJ_CLI_MAIN_HPP
#define SEMIBJ_CLI_MAIN_HPP

/// Entry point of the command-line tool, separated from main() so tests can
/// drive it in-process.  Returns the process exit code: 0 success, 1 invalid
/// input, 2 numerical failure, 3 property violation.
int cli_main(int argc, const char* const* argv);

#endif
