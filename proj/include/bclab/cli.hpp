#ifndef BCLAB_CLI_HPP
#define BCLAB_CLI_HPP

#include <string>
#include <vector>

namespace bclab {

/* Runs one command-line invocation (argv without the program name) and
   returns the process exit code: 0 on success, 2 for usage or input errors,
   3 when an internal consistency check fails. Reports are deterministic:
   every numeric value is serialized exactly (rationals) or as a fixed
   30-digit decimal, so identical invocations produce identical bytes. */
int run_command(const std::vector<std::string>& args);

}  // namespace bclab

#endif
