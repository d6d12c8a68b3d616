#include "robustprep/device/noise_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace robustprep::device {

namespace {

void check_gate_noise(const GateNoise& gn) {
    if (std::abs(gn.epsilon) >= 0.5) {
        throw std::invalid_argument("NoiseModel: |epsilon| must be < 0.5");
    }
    if (!std::isfinite(gn.epsilon) || !std::isfinite(gn.delta)) {
        throw std::invalid_argument("NoiseModel: non-finite coherent distortion");
    }
}

}  // namespace

void NoiseModel::validate(int n_qubits) const {
    if (p1 < 0.0 || p1 >= 1.0 || p2 < 0.0 || p2 >= 1.0) {
        throw std::invalid_argument("NoiseModel: depolarizing strengths must lie in [0, 1)");
    }
    for (const auto& [kind, gn] : coherent) {
        (void)kind;
        check_gate_noise(gn);
    }
    for (const auto& [key, gn] : overrides) {
        check_gate_noise(gn);
        if (static_cast<int>(key.second.size()) != gate_arity(key.first)) {
            throw std::invalid_argument("NoiseModel: override qubit tuple arity mismatch");
        }
    }
    if (!readout.empty()) {
        if (static_cast<int>(readout.size()) != n_qubits) {
            throw std::invalid_argument("NoiseModel: readout must list one confusion matrix "
                                        "per qubit (got " + std::to_string(readout.size()) +
                                        " for " + std::to_string(n_qubits) + " qubits)");
        }
        for (const auto& a : readout) {
            for (int c = 0; c < 2; ++c) {
                double col_sum = 0.0;
                for (int r = 0; r < 2; ++r) {
                    if (a(r, c) < 0.0 || a(r, c) > 1.0) {
                        throw std::invalid_argument(
                            "NoiseModel: confusion entries must lie in [0, 1]");
                    }
                    col_sum += a(r, c);
                }
                if (std::abs(col_sum - 1.0) > 1e-9) {
                    throw std::invalid_argument(
                        "NoiseModel: confusion matrix columns must sum to 1");
                }
            }
        }
    }
}

NoiseModel NoiseModel::ideal() { return NoiseModel{}; }

NoiseModel& NoiseModel::with_coherent(GateKind kind, double epsilon, double delta) {
    coherent[kind] = GateNoise{epsilon, delta};
    return *this;
}

NoiseModel& NoiseModel::with_uniform_coherent(double epsilon, double delta) {
    for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RZX}) {
        coherent[kind] = GateNoise{epsilon, delta};
    }
    return *this;
}

NoiseModel& NoiseModel::with_depolarizing(double p1_value, double p2_value) {
    p1 = p1_value;
    p2 = p2_value;
    return *this;
}

NoiseModel& NoiseModel::with_symmetric_readout_flip(int n_qubits, double flip_probability) {
    readout.assign(static_cast<std::size_t>(n_qubits), symmetric_confusion(flip_probability));
    return *this;
}

Eigen::Matrix2d symmetric_confusion(double flip_probability) {
    Eigen::Matrix2d a;
    a << 1.0 - flip_probability, flip_probability,  //
        flip_probability, 1.0 - flip_probability;
    return a;
}

}  // namespace robustprep::device
