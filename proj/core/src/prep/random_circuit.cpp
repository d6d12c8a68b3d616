#include "robustprep/prep/random_circuit.hpp"

#include <numbers>
#include <stdexcept>

#include "robustprep/qcore/rng.hpp"

namespace robustprep::prep {

Circuit random_circuit(int n_qubits, int n_params, int extra_ops, std::uint64_t seed,
                       bool allow_shared) {
    if (n_qubits < 1 || n_params < 1 || extra_ops < 0) {
        throw std::invalid_argument("random_circuit: invalid shape");
    }
    Rng rng(seed);
    Circuit circuit;
    circuit.n_qubits = n_qubits;
    circuit.n_params = n_params;

    auto random_qubit = [&]() { return static_cast<int>(rng.uniform_int(n_qubits)); };
    auto random_pair = [&]() {
        const int a = random_qubit();
        int b = random_qubit();
        while (b == a) {
            b = random_qubit();
        }
        return std::pair<int, int>{a, b};
    };

    auto push_param_op = [&](int param_index) {
        const std::uint64_t pick = rng.uniform_int(n_qubits >= 2 ? 4 : 3);
        switch (pick) {
            case 0:
                circuit.ops.push_back(CircuitOp::param(GateKind::RX, {random_qubit()},
                                                       param_index));
                break;
            case 1:
                circuit.ops.push_back(CircuitOp::param(GateKind::RY, {random_qubit()},
                                                       param_index));
                break;
            case 2:
                circuit.ops.push_back(CircuitOp::param(GateKind::RZ, {random_qubit()},
                                                       param_index));
                break;
            default: {
                const auto [a, b] = random_pair();
                circuit.ops.push_back(CircuitOp::param(GateKind::RZX, {a, b}, param_index));
                break;
            }
        }
    };

    // Guarantee coverage of every parameter index, then add extra ops that
    // sometimes reuse indices and sometimes carry no parameter at all.
    for (int k = 0; k < n_params; ++k) {
        push_param_op(k);
    }
    for (int i = 0; i < extra_ops; ++i) {
        const std::uint64_t pick = rng.uniform_int(6);
        if (pick == 0 && allow_shared) {
            push_param_op(static_cast<int>(rng.uniform_int(n_params)));  // shared index
        } else if (pick <= 1) {
            circuit.ops.push_back(CircuitOp::fixed(
                GateKind::RY, {random_qubit()},
                rng.uniform(-std::numbers::pi, std::numbers::pi)));
        } else if (pick == 2 && n_qubits >= 2) {
            const auto [a, b] = random_pair();
            circuit.ops.push_back(CircuitOp::plain(GateKind::CNOT, {a, b}));
        } else if (pick == 3) {
            circuit.ops.push_back(CircuitOp::plain(GateKind::H, {random_qubit()}));
        } else if (pick == 4) {
            circuit.ops.push_back(CircuitOp::plain(GateKind::SX, {random_qubit()}));
        } else {
            circuit.ops.push_back(CircuitOp::plain(GateKind::SDG, {random_qubit()}));
        }
    }
    circuit.validate();
    return circuit;
}

}  // namespace robustprep::prep
