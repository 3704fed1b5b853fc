#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aoi/config.hpp"

namespace aoi::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kValidationError = 1, kRuntimeError = 2 };

// Each command validates the whole config before doing any work and writes
// its CSV (or report) to `out`.
void cmd_bound(const ExperimentConfig& cfg, std::ostream& out);
void cmd_waterfill(const ExperimentConfig& cfg, std::ostream& out);
void cmd_walk(const ExperimentConfig& cfg, std::ostream& out);
void cmd_phases(const ExperimentConfig& cfg, std::ostream& out);
void cmd_audit(const ExperimentConfig& cfg, std::ostream& out);
// `trace`, when given, receives one JSON line per delivery of the first seed.
void cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream* trace = nullptr);
void cmd_sweep(const ExperimentConfig& cfg, std::ostream& out);
void cmd_config(const ExperimentConfig& cfg, std::ostream& out);

// Full command-line entry point: parses args (argv[0] is the program name),
// loads the config and dispatches. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aoi::cli
