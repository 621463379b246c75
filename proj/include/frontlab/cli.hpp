#pragma once

#include <string>

#include "frontlab/config.hpp"

namespace frontlab {

/// Exit codes of the command runner.
enum ExitCode {
    exit_ok = 0,
    exit_config = 1,
    exit_nonconvergence = 2,
    exit_hypothesis = 3,
    exit_blowup = 4,
};

/// Executes the configured command, writing CSV/report artifacts under
/// cfg.out_prefix and one machine-readable summary line to stdout. Errors
/// are mapped to the exit-code contract above.
int run(const RunConfig& cfg);

}  // namespace frontlab
