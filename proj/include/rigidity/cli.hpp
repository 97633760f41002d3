#ifndef RIGIDITY_CLI_HPP
#define RIGIDITY_CLI_HPP

namespace rigidity {

// Parses argv and runs one subcommand.  Returns the process exit code:
// 0 success, 1 a verification check failed, 2 usage or configuration error.
int dispatch(int argc, char** argv);

}  // namespace rigidity

#endif
