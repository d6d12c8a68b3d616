// Topology-aware hardware-efficient ansatz builder.
#pragma once

#include "robustprep/prep/coupling.hpp"
#include "robustprep/qcore/circuit.hpp"

namespace robustprep::prep {

struct AnsatzSpec {
    int n_qubits = 0;
    CouplingMap coupling;
    int n_blocks = 1;               // number of two-qubit blocks
    GateKind entangler = GateKind::CNOT;  // CNOT or RZX

    void validate() const;
};

// One global (RY, RZ) layer, then n_blocks two-qubit blocks. Each block on
// edge (a, b) applies (RY, RZ) to both endpoints followed by the entangler
// (an RZX entangler adds one parameter). Blocks are scheduled layer by layer:
// every layer is a greedy maximal matching over the edges not yet used in the
// current cycle (edges in sorted order), so parallel-executable blocks land
// together and all edges are covered before any repeats. Parameters are all
// distinct: 2n + 4*blocks (+blocks for RZX).
Circuit build_ansatz(const AnsatzSpec& spec);

// Number of two-qubit ops in a circuit.
int two_qubit_gate_count(const Circuit& circuit);

}  // namespace robustprep::prep
