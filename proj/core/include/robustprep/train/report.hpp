// Per-step training records plus device-budget accounting, with CSV and JSON
// serialization for the experiment front-end.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace robustprep::train {

enum class Phase { noise_free, noise_aware };

std::string_view phase_name(Phase phase);

struct StepRecord {
    long step = 0;
    Phase phase = Phase::noise_free;
    double loss = 0.0;
    double sim_fidelity = 0.0;
    std::optional<double> dev_fidelity;
    std::optional<double> coherent_error;
    std::optional<double> incoherent_p;
    std::uint64_t cum_device_shots = 0;
};

struct TrainReport {
    std::vector<StepRecord> steps;
    std::vector<double> final_params;
    // Parameters after each update, populated when the config asks for it.
    std::vector<std::vector<double>> trajectory;
    std::uint64_t device_setting_executions = 0;
    std::uint64_t device_shots = 0;
    long degenerate_steps = 0;  // steps skipped due to a zero loss cotangent

    const StepRecord& last() const;
    // Appends another phase's records, preserving step numbering.
    void append(const TrainReport& other);

    // CSV columns: step,phase,loss,sim_fidelity,dev_fidelity,coherent_err,
    // incoherent_p,cum_device_shots (empty cells for absent values).
    void write_csv(std::ostream& out) const;
    // Structured summary: final metrics, counters, and final parameters.
    std::string summary_json(int indent = 2) const;
};

}  // namespace robustprep::train
