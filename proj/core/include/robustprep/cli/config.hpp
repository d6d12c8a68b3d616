// Experiment configuration: a single versioned JSON document describing the
// experiment kind, target, ansatz, noise model, and training setup. One root
// seed fans out deterministically to every stochastic sub-component.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "robustprep/device/noise_model.hpp"
#include "robustprep/prep/ansatz.hpp"
#include "robustprep/prep/targets.hpp"
#include "robustprep/train/trainer.hpp"

namespace robustprep::cli {

enum class ExperimentKind {
    prepare,
    finetune,
    compare_optimizers,
    compare_ad,
    grad_check,
    tomo_check,
    synth,
    regress,
};

std::string_view experiment_name(ExperimentKind kind);

struct ExperimentConfig {
    int version = 1;
    ExperimentKind kind = ExperimentKind::prepare;
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    prep::TargetSpec target;        // prepare/finetune/tomo_check
    prep::AnsatzSpec ansatz;        // experiments with a trainable circuit
    device::NoiseModel noise;
    train::TrainConfig train;
    bool mitigation = true;

    // grad_check
    int grad_check_qubits = 4;
    int grad_check_trials = 50;

    // tomo_check
    int tomo_check_repeats = 20;

    // compare_optimizers
    long compare_ps_steps = 4;  // PS step count; the shot budget for all methods

    // compare_ad
    int compare_targets = 5;

    // synth: "random" (seeded Haar unitary) or "cnot"
    std::string synth_target = "random";

    // regress
    int regression_task = 1;

    int jobs = 1;
};

// Parses and fully validates a config document; throws std::invalid_argument
// with a descriptive message on any schema violation.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical JSON echo of a parsed config (used in the run manifest).
std::string config_to_json(const ExperimentConfig& config, int indent = 2);

}  // namespace robustprep::cli
