// Configurable noise description for the emulated device: coherent per-gate
// angle distortion, depolarizing strengths, and per-qubit readout confusion.
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robustprep/qcore/gates.hpp"

namespace robustprep::device {

// Affine angle distortion: theta -> theta * (1 + epsilon) + delta.
struct GateNoise {
    double epsilon = 0.0;  // multiplicative, dimensionless
    double delta = 0.0;    // additive, radians
};

struct NoiseModel {
    // Per-kind coherent distortion; applies to parameterized gates only.
    std::map<GateKind, GateNoise> coherent;
    // Per (kind, qubit tuple) overrides. An override also distorts
    // non-parameterized gates through their equivalent rotation.
    std::map<std::pair<GateKind, std::vector<int>>, GateNoise> overrides;
    // Depolarizing strength after each 1-qubit / 2-qubit gate.
    double p1 = 0.0;
    double p2 = 0.0;
    // Per-qubit 2x2 confusion matrices, column-stochastic with
    // readout[q](i, j) = P(read i | true j). Empty means ideal readout.
    std::vector<Eigen::Matrix2d> readout;
    std::uint64_t seed = 0;

    void validate(int n_qubits) const;

    // Helpers for building models.
    static NoiseModel ideal();
    NoiseModel& with_coherent(GateKind kind, double epsilon, double delta = 0.0);
    NoiseModel& with_uniform_coherent(double epsilon, double delta = 0.0);
    NoiseModel& with_depolarizing(double p1_value, double p2_value);
    NoiseModel& with_symmetric_readout_flip(int n_qubits, double flip_probability);
};

// Confusion matrix for a symmetric bit flip: diag entries 1-p, off-diag p.
Eigen::Matrix2d symmetric_confusion(double flip_probability);

}  // namespace robustprep::device
