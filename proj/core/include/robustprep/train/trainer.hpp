// State-preparation training: noise-free pre-training on the simulator and
// noise-aware fine-tuning against a black-box device.
//
// The fine-tuning loop runs the circuit on the device, reconstructs the
// prepared state by shadow tomography, evaluates the loss on that noisy
// estimate, and hands the loss cotangent straight to the noiseless simulator
// tape (straight-through gradient replacement). One tomography yields the
// gradient for every parameter, so the per-round device cost is independent
// of n_params.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "robustprep/device/device.hpp"
#include "robustprep/qcore/circuit.hpp"
#include "robustprep/qcore/metrics.hpp"
#include "robustprep/tomo/tomography.hpp"
#include "robustprep/train/optimizers.hpp"
#include "robustprep/train/report.hpp"

namespace robustprep::train {

struct TomographyConfig {
    tomo::PlanMode mode = tomo::PlanMode::full_enumeration;
    int sampled_k = 0;  // settings per step in sampled mode
    std::int64_t shots_per_setting = 1024;
    // Sampled mode draws fresh bases every step (stochastic, SGD-style).
    bool resample_each_step = true;
};

enum class LossKind { frobenius_sqrt, frobenius_squared };

struct TrainConfig {
    double lr = 5e-3;
    long noise_free_steps = 500;
    long noise_aware_steps = 50;
    OptimizerConfig optimizer = AdamConfig{};
    TomographyConfig tomography;
    std::uint64_t seed = 0;
    LossKind loss = LossKind::frobenius_sqrt;
    // Calibrated readout confusion used for mitigation during tomography;
    // nullopt disables mitigation.
    std::optional<std::vector<Eigen::Matrix2d>> readout_confusion;
    // Record the parameter vector after every update into the report.
    bool record_trajectory = false;

    void validate() const;
};

// Seeded parameter initialization, uniform in [-0.1, 0.1] radians.
std::vector<double> init_params(const Circuit& circuit, std::uint64_t seed);

// Noise-free phase: simulator forward, Frobenius loss against the target,
// adjoint gradient, optimizer update. Appends one extra record evaluating the
// final parameters. `theta0` empty means seeded initialization; an external
// optimizer (if given) is used and advanced in place.
TrainReport train_noise_free(const Circuit& circuit, const StateVector& target,
                             const TrainConfig& cfg, std::span<const double> theta0 = {},
                             Optimizer* optimizer = nullptr);

// Noise-aware phase per step: device execution over the tomography plan,
// shadow estimate (with mitigation), loss cotangent on the estimate, adjoint
// gradient through the noiseless tape, optimizer update. Exactly
// noise_aware_steps * #settings device executions. A degenerate loss
// (cotangent undefined) logs a zero step.
TrainReport finetune_noise_aware(const Circuit& circuit, std::span<const double> theta0,
                                 const StateVector& target, device::DeviceExecutor& dev,
                                 const TrainConfig& cfg, Optimizer* optimizer = nullptr);

// Full protocol: noise-free steps then noise-aware steps with one optimizer
// carried across the phase boundary.
TrainReport prepare_state(const Circuit& circuit, const StateVector& target,
                          device::DeviceExecutor& dev, const TrainConfig& cfg);

// Black-box two-sided parameter-shift gradient: entry k is
// (f(theta + pi/2 e_k) - f(theta - pi/2 e_k)) / 2; exactly 2 n_params calls.
struct ParameterShiftResult {
    std::vector<double> gradient;
    long evaluations = 0;
};
ParameterShiftResult parameter_shift_gradient(
    const std::function<double(std::span<const double>)>& evaluate, const Circuit& circuit,
    std::span<const double> theta);

// One tomography pass returning the qcore quality metrics against the target.
struct DeviceEvaluation {
    double fidelity = 0.0;
    double coherent_error = 0.0;
    double incoherent_p = 0.0;
    bool incoherent_clamped = false;
    std::uint64_t shots_used = 0;
};
DeviceEvaluation evaluate_on_device(
    const Circuit& circuit, std::span<const double> theta, const StateVector& target,
    device::DeviceExecutor& dev, const tomo::TomographyPlan& plan,
    const std::optional<std::vector<Eigen::Matrix2d>>& mitigation = std::nullopt);

// Settings for one fine-tuning step (full plan, or seeded per-step sample).
std::vector<device::MeasurementSetting> settings_for_step(const TomographyConfig& tomography,
                                                          int n_qubits, std::uint64_t seed,
                                                          long step);

}  // namespace robustprep::train
