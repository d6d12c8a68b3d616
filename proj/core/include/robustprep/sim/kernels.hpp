// In-place statevector gate kernels over strided amplitude groups.
#pragma once

#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "robustprep/qcore/types.hpp"

namespace robustprep::sim {

// Applies a 2x2 unitary to `qubit` of an n-qubit amplitude vector.
void apply_single_qubit(std::span<complex_t> amps, int n_qubits,
                        const Eigen::Matrix2cd& u, int qubit);

// Applies a 4x4 matrix; qubit_lo is the least significant local bit.
void apply_two_qubit(std::span<complex_t> amps, int n_qubits,
                     const Eigen::Matrix4cd& u, int qubit_lo, int qubit_hi);

// Applies a Pauli string (position q = qubit q, letters I/X/Y/Z).
void apply_pauli_string(std::span<complex_t> amps, int n_qubits, std::string_view pauli);

// <a|b>.
complex_t inner_product(std::span<const complex_t> a, std::span<const complex_t> b);

}  // namespace robustprep::sim
