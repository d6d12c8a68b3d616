// Circuit representation shared by the simulator, the emulated device, and
// the decomposition/ansatz builders.
#pragma once

#include <span>
#include <variant>
#include <vector>

#include "robustprep/qcore/gates.hpp"

namespace robustprep {

struct ParamIndex {
    int value;
};

struct FixedAngle {
    double radians;
};

// monostate = no binding (non-parameterized kinds only).
using Binding = std::variant<std::monostate, ParamIndex, FixedAngle>;

struct CircuitOp {
    GateKind kind;
    std::vector<int> qubits;  // control first for CNOT, Z qubit first for RZX
    Binding binding;

    static CircuitOp param(GateKind kind, std::vector<int> qubits, int param_index);
    static CircuitOp fixed(GateKind kind, std::vector<int> qubits, double radians);
    static CircuitOp plain(GateKind kind, std::vector<int> qubits);

    bool is_parameterized() const { return std::holds_alternative<ParamIndex>(binding); }
    bool has_fixed_angle() const { return std::holds_alternative<FixedAngle>(binding); }
};

struct Circuit {
    int n_qubits = 0;
    std::vector<CircuitOp> ops;
    int n_params = 0;

    // Checks qubit bounds, binding/kind consistency, parameter indices in
    // range, and that every parameter index is referenced at least once.
    void validate() const;
};

// Angle of an op given the bound parameter vector; throws for unbound kinds.
double resolve_angle(const CircuitOp& op, std::span<const double> params);

}  // namespace robustprep
