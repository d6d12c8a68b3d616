// Noiseless differentiable statevector simulator.
//
// forward() executes a circuit once and records a tape; backward() then
// computes the gradient of any scalar 2*Re<xi|psi(theta)> for all parameters
// in a single reverse sweep (adjoint method): intermediate states are
// reconstructed by un-applying gates, so memory stays O(2^n) and the total
// work is bounded by 3 gate applications per op, independent of n_params.
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "robustprep/qcore/circuit.hpp"
#include "robustprep/qcore/types.hpp"

namespace robustprep::sim {

struct SimOptions {
    int max_qubits = 14;
};

// Instrumentation for the cost contract: one tick per 1- or 2-qubit kernel
// application.
struct SimStats {
    std::uint64_t gate_applications = 0;
};

struct ForwardTape {
    Circuit circuit;
    std::vector<double> params;
    StateVector state;  // final state
};

ForwardTape forward(const Circuit& circuit, std::span<const double> params,
                    const SimOptions& options = {}, SimStats* stats = nullptr);

// Gradient entries 2*Re<cotangent|d psi/d theta_k>; contributions of ops
// sharing a parameter index sum.
std::vector<double> backward(const ForwardTape& tape,
                             std::span<const complex_t> cotangent,
                             SimStats* stats = nullptr);

// <psi|P|psi> for a Pauli string (position q = qubit q).
double expectation(const StateVector& state, std::string_view pauli);

// Gradient of tr(M rho(theta)) for Hermitian M and rho = |psi><psi|; equals
// backward(tape, M psi). M is checked Hermitian within 1e-8.
std::vector<double> state_gradient_cotangent(const ForwardTape& tape,
                                             const Eigen::MatrixXcd& m,
                                             SimStats* stats = nullptr);

}  // namespace robustprep::sim
