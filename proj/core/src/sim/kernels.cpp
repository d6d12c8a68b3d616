#include "robustprep/sim/kernels.hpp"

#include <array>
#include <stdexcept>

#include "robustprep/qcore/gates.hpp"

namespace robustprep::sim {

void apply_single_qubit(std::span<complex_t> amps, int n_qubits,
                        const Eigen::Matrix2cd& u, int qubit) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument("apply_single_qubit: qubit out of range");
    }
    const std::size_t dim = dim_for_qubits(n_qubits);
    const std::size_t step = std::size_t{1} << qubit;
    const complex_t u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const complex_t a0 = amps[i];
            const complex_t a1 = amps[i + step];
            amps[i] = u00 * a0 + u01 * a1;
            amps[i + step] = u10 * a0 + u11 * a1;
        }
    }
}

void apply_two_qubit(std::span<complex_t> amps, int n_qubits,
                     const Eigen::Matrix4cd& u, int qubit_lo, int qubit_hi) {
    if (qubit_lo < 0 || qubit_lo >= n_qubits || qubit_hi < 0 || qubit_hi >= n_qubits ||
        qubit_lo == qubit_hi) {
        throw std::invalid_argument("apply_two_qubit: invalid qubit pair");
    }
    const std::size_t dim = dim_for_qubits(n_qubits);
    const std::size_t mask_lo = std::size_t{1} << qubit_lo;
    const std::size_t mask_hi = std::size_t{1} << qubit_hi;
    std::array<complex_t, 4> x;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask_lo) != 0 || (i & mask_hi) != 0) {
            continue;
        }
        const std::array<std::size_t, 4> idx = {i, i | mask_lo, i | mask_hi,
                                                i | mask_lo | mask_hi};
        for (int k = 0; k < 4; ++k) {
            x[static_cast<std::size_t>(k)] = amps[idx[static_cast<std::size_t>(k)]];
        }
        for (int r = 0; r < 4; ++r) {
            complex_t acc{0.0, 0.0};
            for (int c = 0; c < 4; ++c) {
                acc += u(r, c) * x[static_cast<std::size_t>(c)];
            }
            amps[idx[static_cast<std::size_t>(r)]] = acc;
        }
    }
}

void apply_pauli_string(std::span<complex_t> amps, int n_qubits, std::string_view pauli) {
    if (pauli.size() != static_cast<std::size_t>(n_qubits)) {
        throw std::invalid_argument("apply_pauli_string: string length must equal n_qubits");
    }
    for (int q = 0; q < n_qubits; ++q) {
        const char letter = pauli[static_cast<std::size_t>(q)];
        if (letter == 'I') {
            continue;
        }
        apply_single_qubit(amps, n_qubits, pauli_matrix(letter), q);
    }
}

complex_t inner_product(std::span<const complex_t> a, std::span<const complex_t> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    complex_t acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

}  // namespace robustprep::sim
