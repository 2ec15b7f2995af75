#pragma once

#include "hipsim/io/config.hpp"

#include <string>
#include <vector>

namespace hipsim {

struct ExecuteResult {
    int exit_code = 0;                   // 0 ok, 2 invalid input, 3 budget exhausted
    std::vector<std::string> artifacts;  // files written (data + manifest)
    std::string message;                 // one-line outcome summary
};

std::vector<std::string> command_names();

// Runs one subcommand against a parsed config, writing its data artifacts
// and a manifest into the configured output directory.  validate=true adds
// a ground-truth comparison block to the reconstruct result (the only mode
// in which the sampled hyperplanes are revealed next to the output).
ExecuteResult execute(const std::string& command, const RunConfig& cfg, bool validate = false);

// Command list, config key reference with units, exit codes.
std::string help_text();

}  // namespace hipsim
