#include "robustprep/qcore/circuit.hpp"

#include <stdexcept>
#include <string>

namespace robustprep {

namespace {

void check_op_shape(GateKind kind, const std::vector<int>& qubits) {
    if (static_cast<int>(qubits.size()) != gate_arity(kind)) {
        throw std::invalid_argument("CircuitOp: " + std::string(gate_name(kind)) +
                                    " expects " + std::to_string(gate_arity(kind)) +
                                    " qubit(s), got " + std::to_string(qubits.size()));
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument("CircuitOp: two-qubit gate with repeated qubit index");
    }
}

}  // namespace

CircuitOp CircuitOp::param(GateKind kind, std::vector<int> qubits, int param_index) {
    check_op_shape(kind, qubits);
    if (!gate_is_parameterized(kind)) {
        throw std::invalid_argument("CircuitOp: parameter binding on non-parameterized " +
                                    std::string(gate_name(kind)));
    }
    return CircuitOp{kind, std::move(qubits), ParamIndex{param_index}};
}

CircuitOp CircuitOp::fixed(GateKind kind, std::vector<int> qubits, double radians) {
    check_op_shape(kind, qubits);
    if (!gate_is_parameterized(kind)) {
        throw std::invalid_argument("CircuitOp: fixed angle on non-parameterized " +
                                    std::string(gate_name(kind)));
    }
    return CircuitOp{kind, std::move(qubits), FixedAngle{radians}};
}

CircuitOp CircuitOp::plain(GateKind kind, std::vector<int> qubits) {
    check_op_shape(kind, qubits);
    if (gate_is_parameterized(kind)) {
        throw std::invalid_argument("CircuitOp: missing binding for parameterized " +
                                    std::string(gate_name(kind)));
    }
    return CircuitOp{kind, std::move(qubits), std::monostate{}};
}

void Circuit::validate() const {
    if (n_qubits < 1) {
        throw std::invalid_argument("Circuit: n_qubits must be >= 1");
    }
    if (n_params < 0) {
        throw std::invalid_argument("Circuit: n_params must be >= 0");
    }
    std::vector<bool> referenced(static_cast<std::size_t>(n_params), false);
    for (const auto& op : ops) {
        check_op_shape(op.kind, op.qubits);
        for (int q : op.qubits) {
            if (q < 0 || q >= n_qubits) {
                throw std::invalid_argument("Circuit: qubit index " + std::to_string(q) +
                                            " out of range for " +
                                            std::to_string(n_qubits) + " qubits");
            }
        }
        const bool has_binding = !std::holds_alternative<std::monostate>(op.binding);
        if (gate_is_parameterized(op.kind) != has_binding) {
            throw std::invalid_argument(
                "Circuit: binding present iff gate kind is parameterized (violated by " +
                std::string(gate_name(op.kind)) + ")");
        }
        if (const auto* p = std::get_if<ParamIndex>(&op.binding)) {
            if (p->value < 0 || p->value >= n_params) {
                throw std::invalid_argument("Circuit: parameter index " +
                                            std::to_string(p->value) + " out of range");
            }
            referenced[static_cast<std::size_t>(p->value)] = true;
        }
    }
    for (int k = 0; k < n_params; ++k) {
        if (!referenced[static_cast<std::size_t>(k)]) {
            throw std::invalid_argument("Circuit: dead parameter index " + std::to_string(k));
        }
    }
}

double resolve_angle(const CircuitOp& op, std::span<const double> params) {
    if (const auto* p = std::get_if<ParamIndex>(&op.binding)) {
        if (p->value < 0 || static_cast<std::size_t>(p->value) >= params.size()) {
            throw std::invalid_argument("resolve_angle: parameter index out of range");
        }
        return params[static_cast<std::size_t>(p->value)];
    }
    if (const auto* f = std::get_if<FixedAngle>(&op.binding)) {
        return f->radians;
    }
    throw std::invalid_argument("resolve_angle: op has no angle binding");
}

}  // namespace robustprep
