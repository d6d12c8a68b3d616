#include "robustprep/prep/ansatz.hpp"

#include <stdexcept>
#include <vector>

namespace robustprep::prep {

void AnsatzSpec::validate() const {
    coupling.validate();
    if (n_qubits != coupling.n_qubits) {
        throw std::invalid_argument("AnsatzSpec: n_qubits disagrees with coupling map");
    }
    if (n_blocks < 1) {
        throw std::invalid_argument("AnsatzSpec: n_blocks must be >= 1");
    }
    if (entangler != GateKind::CNOT && entangler != GateKind::RZX) {
        throw std::invalid_argument("AnsatzSpec: entangler must be CNOT or RZX");
    }
    if (coupling.edges.empty()) {
        throw std::invalid_argument("AnsatzSpec: coupling map has no edges");
    }
}

Circuit build_ansatz(const AnsatzSpec& spec) {
    spec.validate();
    Circuit circuit;
    circuit.n_qubits = spec.n_qubits;
    int next_param = 0;

    auto rotate = [&](int qubit) {
        circuit.ops.push_back(CircuitOp::param(GateKind::RY, {qubit}, next_param++));
        circuit.ops.push_back(CircuitOp::param(GateKind::RZ, {qubit}, next_param++));
    };

    for (int q = 0; q < spec.n_qubits; ++q) {
        rotate(q);
    }

    // Layered schedule: maximal matchings over the edges still unused in the
    // current cycle; a new cycle starts once every edge has been used.
    std::vector<bool> used_in_cycle(spec.coupling.edges.size(), false);
    std::size_t remaining_in_cycle = spec.coupling.edges.size();
    int emitted = 0;
    while (emitted < spec.n_blocks) {
        std::vector<bool> busy(static_cast<std::size_t>(spec.n_qubits), false);
        for (std::size_t e = 0; e < spec.coupling.edges.size() && emitted < spec.n_blocks;
             ++e) {
            if (used_in_cycle[e]) {
                continue;
            }
            const auto [a, b] = spec.coupling.edges[e];
            if (busy[static_cast<std::size_t>(a)] || busy[static_cast<std::size_t>(b)]) {
                continue;
            }
            busy[static_cast<std::size_t>(a)] = true;
            busy[static_cast<std::size_t>(b)] = true;
            used_in_cycle[e] = true;
            --remaining_in_cycle;

            rotate(a);
            rotate(b);
            if (spec.entangler == GateKind::CNOT) {
                circuit.ops.push_back(CircuitOp::plain(GateKind::CNOT, {a, b}));
            } else {
                circuit.ops.push_back(CircuitOp::param(GateKind::RZX, {a, b}, next_param++));
            }
            ++emitted;
        }
        if (remaining_in_cycle == 0) {
            used_in_cycle.assign(used_in_cycle.size(), false);
            remaining_in_cycle = used_in_cycle.size();
        }
    }

    circuit.n_params = next_param;
    circuit.validate();
    return circuit;
}

int two_qubit_gate_count(const Circuit& circuit) {
    int count = 0;
    for (const auto& op : circuit.ops) {
        if (gate_arity(op.kind) == 2) {
            ++count;
        }
    }
    return count;
}

}  // namespace robustprep::prep
