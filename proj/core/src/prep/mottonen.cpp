#include "robustprep/prep/mottonen.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace robustprep::prep {

namespace {

constexpr double kPruneTolerance = 1e-12;

// Emits a uniformly controlled rotation of `axis` (RY or RZ) on `target`:
// angles[pattern] applies when the control qubits (bit j of pattern =
// controls[j]) carry that pattern. Gray-code walk: exactly 2^k rotations and
// 2^k CNOTs for k >= 1 controls.
void emit_multiplexed_rotation(Circuit& circuit, GateKind axis, int target,
                               const std::vector<int>& controls,
                               const std::vector<double>& angles) {
    bool all_zero = true;
    for (double a : angles) {
        if (std::abs(a) > kPruneTolerance) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) {
        return;
    }
    const std::size_t k = controls.size();
    if (k == 0) {
        circuit.ops.push_back(CircuitOp::fixed(axis, {target}, angles[0]));
        return;
    }
    const std::size_t count = std::size_t{1} << k;
    // gamma_j = 2^-k sum_b (-1)^{popcount(gray(j) & b)} theta_b.
    std::vector<double> gamma(count, 0.0);
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t gray = j ^ (j >> 1);
        double acc = 0.0;
        for (std::size_t b = 0; b < count; ++b) {
            const int sign = (std::popcount(gray & b) & 1) ? -1 : 1;
            acc += sign * angles[b];
        }
        gamma[j] = acc / static_cast<double>(count);
    }
    for (std::size_t j = 0; j < count; ++j) {
        circuit.ops.push_back(CircuitOp::fixed(axis, {target}, gamma[j]));
        // Control position: changed Gray bit, ctz(j+1); wraps to the top bit.
        const int bit = (j + 1 == count)
                            ? static_cast<int>(k) - 1
                            : std::countr_zero(j + 1);
        circuit.ops.push_back(
            CircuitOp::plain(GateKind::CNOT, {controls[static_cast<std::size_t>(bit)], target}));
    }
}

}  // namespace

Circuit mottonen_decompose(const StateVector& target) {
    const int n = target.n_qubits();
    std::vector<complex_t> v(target.amplitudes().begin(), target.amplitudes().end());

    // Disentangle qubit t (current least significant) controlled on the
    // higher qubits, recording the RY/RZ multiplexer angles that the forward
    // circuit must apply.
    std::vector<std::vector<double>> ry_angles(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> rz_angles(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const std::size_t half = v.size() / 2;
        std::vector<complex_t> parent(half);
        auto& thetas = ry_angles[static_cast<std::size_t>(t)];
        auto& phis = rz_angles[static_cast<std::size_t>(t)];
        thetas.resize(half);
        phis.resize(half);
        for (std::size_t i = 0; i < half; ++i) {
            const complex_t a0 = v[2 * i];
            const complex_t a1 = v[2 * i + 1];
            const double r0 = std::abs(a0);
            const double r1 = std::abs(a1);
            const double r = std::hypot(r0, r1);
            if (r < kPruneTolerance) {
                thetas[i] = 0.0;
                phis[i] = 0.0;
                parent[i] = complex_t{0.0, 0.0};
                continue;
            }
            const double arg0 = (r0 > 0.0) ? std::arg(a0) : 0.0;
            const double arg1 = (r1 > 0.0) ? std::arg(a1) : 0.0;
            thetas[i] = 2.0 * std::atan2(r1, r0);
            phis[i] = arg1 - arg0;
            parent[i] = std::polar(r, (arg0 + arg1) / 2.0);
        }
        v = std::move(parent);
    }

    // Forward order: the last-disentangled qubit is prepared first.
    Circuit circuit;
    circuit.n_qubits = n;
    circuit.n_params = 0;
    for (int t = n - 1; t >= 0; --t) {
        std::vector<int> controls;
        for (int c = t + 1; c < n; ++c) {
            controls.push_back(c);
        }
        emit_multiplexed_rotation(circuit, GateKind::RY, t, controls,
                                  ry_angles[static_cast<std::size_t>(t)]);
        emit_multiplexed_rotation(circuit, GateKind::RZ, t, controls,
                                  rz_angles[static_cast<std::size_t>(t)]);
    }
    circuit.validate();
    return circuit;
}

}  // namespace robustprep::prep
