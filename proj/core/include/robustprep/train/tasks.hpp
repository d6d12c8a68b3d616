// Other variational tasks driven by the same noise-aware training machinery:
// two-qubit unitary synthesis and quantum state regression.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "robustprep/device/device.hpp"
#include "robustprep/qcore/circuit.hpp"
#include "robustprep/train/trainer.hpp"

namespace robustprep::train {

// ---- Two-qubit unitary synthesis -------------------------------------------

// Six repetitions of [(RY, RZ, RY) on each qubit; RZX] plus a final (RY, RZ,
// RY) layer: 48 parameters.
Circuit synthesis_ansatz_2q();

// The 16 product inputs {|0>, |1>, |+>, |+i>}^x2 as fixed prep circuits.
std::vector<Circuit> synthesis_input_preps_2q();

// Noiseless loss 1 - |tr(V^dag U(theta))|^2 / d^2, d = 4.
double unitary_loss(const Eigen::Matrix4cd& target, std::span<const double> theta);

// Noise-free phase: descent on unitary_loss via per-column adjoint gradients.
// With a device, the noise-aware phase runs state tomography of the ansatz on
// each product input and averages the per-input state losses against the
// target's action (straight-through gradients, summed over inputs).
TrainReport synthesize_unitary(const Eigen::Matrix4cd& target, const TrainConfig& cfg,
                               device::DeviceExecutor* dev = nullptr);

// ---- Quantum state regression ----------------------------------------------

// Inputs cos(t)|000> + e^{i phi} sin(t)|111> on a midpoint 8x8 grid over
// t in [0, pi/2], phi in [0, 2 pi); labels sin(2t)cos(phi) (task 1) or
// sin(2t)sin(phi) (task 2).
struct RegressionDataset {
    std::vector<double> thetas;
    std::vector<double> phis;
    std::vector<double> labels;  // one per (theta, phi) pair, row-major
};
RegressionDataset regression_dataset(int task);

Circuit regression_input_prep(double theta, double phi);

// 3-qubit, 6-block path ansatz with CNOT entanglers (30 parameters).
Circuit regression_ansatz();

// Mean absolute error of <ZZZ> predictions over the dataset grid. Noise-free
// training differentiates through the simulator; noise-aware fine-tuning
// estimates predictions from device Z-basis counts (readout-mitigated when
// configured) and passes the loss signs straight onto the simulated path.
TrainReport state_regression(int task, const TrainConfig& cfg,
                             device::DeviceExecutor* dev = nullptr);

// Grid MAE for given parameters with exact (infinite-shot) predictions; the
// predictions come from a caller-supplied evaluator so both the noiseless
// simulator and a device oracle can score parameters.
double regression_mae(
    int task, std::span<const double> theta,
    const std::function<double(const Circuit& circuit, std::span<const double>)>& predict);

}  // namespace robustprep::train
