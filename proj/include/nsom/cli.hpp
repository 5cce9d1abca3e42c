// Subcommand driver shared by the command-line binary and the tests.
#pragma once

#include <string>

#include "nsom/config.hpp"
#include "nsom/environment.hpp"
#include "nsom/scanner.hpp"

namespace nsom {

TipModel tip_from_config(const RunConfig& cfg);
Sample sample_from_config(const RunConfig& cfg);
Environment env_from_config(const RunConfig& cfg);

// Runs one of fieldmap | scan | sweep | quantum | validate.  Returns the
// process exit code: 0 success, 1 config error, 2 numerical error, 3 I/O
// error.  Partial output files are removed on failure.  Thread priority:
// NSOM_THREADS env, then threads_override (when >= 0), then the config.
int run_subcommand(const std::string& name, const RunConfig& cfg,
                   const std::string& out_dir_override = "",
                   int threads_override = -1);

}  // namespace nsom
