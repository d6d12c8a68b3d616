// Target-state generators for the preparation experiments: Haar-random
// states, PDE-style amplitude profiles (sine, Gaussian), amplitude-encoded
// classical data, and five-qubit-code codewords.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robustprep/qcore/types.hpp"

namespace robustprep::prep {

StateVector haar_state(int n_qubits, std::uint64_t seed);

// Amplitudes proportional to sin(pi x_k), x_k = (k + 0.5) / 2^n.
StateVector sine_state(int n_qubits);

// Amplitudes proportional to exp(-(x_k - mu)^2 / (2 sigma^2)).
StateVector gaussian_state(int n_qubits, double mu = 0.5, double sigma = 0.15);

// Normalizes a non-negative real vector, zero-padded to length 2^n.
StateVector amplitude_state(int n_qubits, const std::vector<double>& values);

// Logical codeword of the five-qubit code: |b_L> ~ prod_i (I + S_i) X_L^b |0>,
// stabilizers XZZXI, IXZZX, XIXZZ, ZXIXZ and X_L = XXXXX.
StateVector qec5_codeword(int logical_bit);

// Fixed synthetic 4x4 grayscale image (row-major pixel values) standing in
// for amplitude-encoded classical data on 4 qubits.
const std::vector<double>& synthetic_image_4x4();

struct TargetSpec {
    std::string kind;  // haar | sine | gaussian | amplitude | qec5 | image4x4
    int n_qubits = 0;
    std::uint64_t seed = 0;
    double mu = 0.5;
    double sigma = 0.15;
    std::vector<double> values;  // amplitude kind
    int logical_bit = 0;         // qec5 kind

    StateVector generate() const;
};

}  // namespace robustprep::prep
