#pragma once

#include <string>

#include "gegd/config.hpp"

namespace gegd {

// Executes a parsed configuration end to end and writes the trace CSV, design
// PGMs, and summary under config.output_dir. Returns the algorithm's trace.
OptimizationTrace execute_run(const RunConfig& config);

// Runs the benchmark section and writes summary.csv plus per-run traces.
BenchSummary execute_bench(const RunConfig& config);

// Exit codes used by the CLI.
enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kConfigError = 2,
  kBackendFailure = 3,
  kNumericalAbort = 4,
};

}  // namespace gegd
