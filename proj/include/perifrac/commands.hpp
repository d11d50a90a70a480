#pragma once

#include <string>

#include "perifrac/config.hpp"

namespace perifrac {

// Exit codes: 0 success, 2 certified infeasible (t below the family's theta),
// 3 solver failure. Configuration problems throw SchemaError before any
// command runs (the binary maps those to exit 1).
//
// Commands: solve, continue, fold, homotopy, certify, oracle-check.
// Artifacts land in out_dir under the names from the config; identical inputs
// produce byte-identical artifacts.
int run_command(const std::string& command, const ExperimentConfig& cfg,
                const std::string& out_dir);

} // namespace perifrac
