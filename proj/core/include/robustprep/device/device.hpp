// Emulated noisy quantum machine. Training code sees only the black-box
// DeviceExecutor surface (parameters in, measurement counts out); the exact
// pre-measurement density matrix is exposed separately for tests and
// evaluation tooling.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "robustprep/device/noise_model.hpp"
#include "robustprep/qcore/circuit.hpp"
#include "robustprep/qcore/types.hpp"

namespace robustprep::device {

// Per-qubit measurement basis letters in {X, Y, Z}; position q = qubit q.
struct MeasurementSetting {
    std::string bases;

    void validate(int n_qubits) const;
};

// Histogram keys are bitstrings with character position q = measured bit of
// qubit q. Counts are real-valued so exact (infinite-shot) distributions can
// flow through the same type; sampled histograms always hold integers.
struct DeviceCounts {
    MeasurementSetting setting;
    std::int64_t shots = 0;
    std::map<std::string, double> histogram;
};

std::string index_to_bitstring(std::uint64_t index, int n_qubits);
std::uint64_t bitstring_to_index(const std::string& bits);

// Runs the circuit with distorted angles and per-gate depolarizing noise,
// rotates each qubit to its measurement basis, applies the readout confusion
// tensor, and draws multinomial samples. Deterministic for fixed inputs and
// seed; the per-setting sample streams are derived from (seed, setting index).
std::vector<DeviceCounts> execute(const Circuit& circuit, std::span<const double> params,
                                  std::span<const MeasurementSetting> settings,
                                  std::int64_t shots_per_setting, const NoiseModel& noise);

// Exact pre-measurement density matrix (steps 1-2 of execute). Testing and
// evaluation oracle; not part of the black-box training surface.
DensityMatrix true_output_state(const Circuit& circuit, std::span<const double> params,
                                const NoiseModel& noise);

// Exact outcome distribution for one setting (after readout confusion).
// Shares the evolution/rotation path with execute.
std::vector<double> exact_outcome_distribution(const Circuit& circuit,
                                               std::span<const double> params,
                                               const MeasurementSetting& setting,
                                               const NoiseModel& noise);

// Black-box execution surface handed to training code.
class DeviceExecutor {
  public:
    virtual ~DeviceExecutor() = default;

    virtual std::vector<DeviceCounts> execute(const Circuit& circuit,
                                              std::span<const double> params,
                                              std::span<const MeasurementSetting> settings,
                                              std::int64_t shots_per_setting) = 0;

    // Cumulative accounting across calls (one execution per setting).
    virtual std::uint64_t setting_executions() const = 0;
    virtual std::uint64_t total_shots() const = 0;
};

class EmulatedDevice final : public DeviceExecutor {
  public:
    explicit EmulatedDevice(NoiseModel noise) : noise_(std::move(noise)) {}

    std::vector<DeviceCounts> execute(const Circuit& circuit, std::span<const double> params,
                                      std::span<const MeasurementSetting> settings,
                                      std::int64_t shots_per_setting) override;

    std::uint64_t setting_executions() const override { return setting_executions_; }
    std::uint64_t total_shots() const override { return total_shots_; }
    void reset_counters();

    const NoiseModel& noise() const { return noise_; }

  private:
    NoiseModel noise_;
    std::uint64_t setting_executions_ = 0;
    std::uint64_t total_shots_ = 0;
};

namespace detail {
// Evolution hook for channel-validity tests: called with the density matrix
// after every gate (post depolarizing).
using EvolutionObserver = std::function<void(const Eigen::MatrixXcd&)>;
Eigen::MatrixXcd evolve_density_matrix(const Circuit& circuit, std::span<const double> params,
                                       const NoiseModel& noise,
                                       const EvolutionObserver& observer = {});
}  // namespace detail

}  // namespace robustprep::device
