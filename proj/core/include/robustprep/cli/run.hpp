// Config-driven experiment runner backing the CLI.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "robustprep/cli/config.hpp"

namespace robustprep::cli {

// Exit codes shared by the runner and the CLI front-end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

struct RunOverrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
};

// Loads, validates, and runs a config file. Config errors exit with code 2
// before any output file is created; a NaN loss exits with code 3.
int run_config_file(const std::string& path, const RunOverrides& overrides = {});

// Runs an already-validated config (overrides applied by the caller).
int run_experiment(const ExperimentConfig& config);

// Worker-thread cap: the smaller of `requested` and ROBUSTPREP_THREADS (when
// set); at least 1.
int effective_jobs(int requested);

}  // namespace robustprep::cli
