#pragma once

#include <string>

namespace datamap {

struct CommandResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string stderr_output;
};

// Runs a command through /bin/sh -c with stdout discarded and stderr
// captured. On timeout the process group is killed and timed_out is set.
CommandResult run_command(const std::string& shell_command, double timeout_secs);

// Shell-quotes a single argument for interpolation into a command template.
std::string shell_quote(const std::string& arg);

}  // namespace datamap
