#include "robustprep/sim/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "robustprep/sim/kernels.hpp"

namespace robustprep::sim {

namespace {

void bump(SimStats* stats) {
    if (stats != nullptr) {
        ++stats->gate_applications;
    }
}

void apply_op(std::span<complex_t> amps, int n_qubits, const CircuitOp& op,
              std::span<const double> params, bool inverse, SimStats* stats) {
    Eigen::MatrixXcd u;
    if (gate_is_parameterized(op.kind)) {
        const double angle = resolve_angle(op, params);
        u = gate_unitary(op.kind, inverse ? -angle : angle);
    } else {
        u = gate_unitary(op.kind);
        if (inverse) {
            u = u.adjoint().eval();
        }
    }
    if (gate_arity(op.kind) == 1) {
        apply_single_qubit(amps, n_qubits, u, op.qubits[0]);
    } else {
        apply_two_qubit(amps, n_qubits, u, op.qubits[0], op.qubits[1]);
    }
    bump(stats);
}

// Applies the op's rotation generator (Z x X for RZX as a single 4x4 kernel
// so the 3-applications-per-op cost bound holds).
void apply_generator(std::span<complex_t> amps, int n_qubits, const CircuitOp& op,
                     SimStats* stats) {
    const std::string_view gen = gate_generator(op.kind);
    if (gen.size() == 1) {
        apply_single_qubit(amps, n_qubits, pauli_matrix(gen[0]), op.qubits[0]);
    } else {
        const Eigen::Matrix4cd g =
            gate_equivalent_rotation(op.kind).generator;
        apply_two_qubit(amps, n_qubits, g, op.qubits[0], op.qubits[1]);
    }
    bump(stats);
}

void check_params(const Circuit& circuit, std::span<const double> params) {
    if (static_cast<int>(params.size()) != circuit.n_params) {
        throw std::invalid_argument("sim: expected " + std::to_string(circuit.n_params) +
                                    " parameters, got " + std::to_string(params.size()));
    }
}

}  // namespace

ForwardTape forward(const Circuit& circuit, std::span<const double> params,
                    const SimOptions& options, SimStats* stats) {
    circuit.validate();
    check_params(circuit, params);
    if (circuit.n_qubits > options.max_qubits) {
        throw std::invalid_argument("sim: circuit exceeds the " +
                                    std::to_string(options.max_qubits) + "-qubit cap");
    }
    std::vector<complex_t> amps(dim_for_qubits(circuit.n_qubits), complex_t{0.0, 0.0});
    amps[0] = complex_t{1.0, 0.0};
    for (const auto& op : circuit.ops) {
        apply_op(amps, circuit.n_qubits, op, params, /*inverse=*/false, stats);
    }
    return ForwardTape{circuit, std::vector<double>(params.begin(), params.end()),
                       StateVector(circuit.n_qubits, std::move(amps))};
}

std::vector<double> backward(const ForwardTape& tape, std::span<const complex_t> cotangent,
                             SimStats* stats) {
    const int n = tape.circuit.n_qubits;
    if (cotangent.size() != tape.state.dim()) {
        throw std::invalid_argument("backward: cotangent dimension mismatch");
    }
    std::vector<double> grad(static_cast<std::size_t>(tape.circuit.n_params), 0.0);

    // phi tracks the state after the op under consideration; lambda tracks
    // the cotangent pulled back through the ops above it.
    std::vector<complex_t> phi(tape.state.amplitudes().begin(), tape.state.amplitudes().end());
    std::vector<complex_t> lambda(cotangent.begin(), cotangent.end());
    std::vector<complex_t> scratch(phi.size());

    for (auto it = tape.circuit.ops.rbegin(); it != tape.circuit.ops.rend(); ++it) {
        const CircuitOp& op = *it;
        if (op.is_parameterized()) {
            // d/dtheta exp(-i theta P/2) inserts -iP/2; the contribution
            // 2*Re<lambda|(-iP/2)|phi> simplifies to Im<lambda|P|phi>.
            scratch.assign(phi.begin(), phi.end());
            apply_generator(scratch, n, op, stats);
            const complex_t overlap = inner_product(lambda, scratch);
            grad[static_cast<std::size_t>(std::get<ParamIndex>(op.binding).value)] +=
                overlap.imag();
        }
        apply_op(phi, n, op, tape.params, /*inverse=*/true, stats);
        apply_op(lambda, n, op, tape.params, /*inverse=*/true, stats);
    }

    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw std::runtime_error("backward: non-finite gradient entry");
        }
    }
    return grad;
}

double expectation(const StateVector& state, std::string_view pauli) {
    std::vector<complex_t> transformed(state.amplitudes().begin(),
                                       state.amplitudes().end());
    apply_pauli_string(transformed, state.n_qubits(), pauli);
    return inner_product(state.amplitudes(), transformed).real();
}

std::vector<double> state_gradient_cotangent(const ForwardTape& tape,
                                             const Eigen::MatrixXcd& m,
                                             SimStats* stats) {
    if (m.rows() != static_cast<Eigen::Index>(tape.state.dim()) || m.rows() != m.cols()) {
        throw std::invalid_argument("state_gradient_cotangent: dimension mismatch");
    }
    if (hermiticity_deviation(m) > 1e-8) {
        throw std::invalid_argument("state_gradient_cotangent: M is not Hermitian");
    }
    const Eigen::VectorXcd xi = m * tape.state.to_eigen();
    return backward(tape, std::span<const complex_t>(xi.data(),
                                                     static_cast<std::size_t>(xi.size())),
                    stats);
}

}  // namespace robustprep::sim
