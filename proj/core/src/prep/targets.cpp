#include "robustprep/prep/targets.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/kernels.hpp"

namespace robustprep::prep {

namespace {

constexpr std::array<const char*, 4> kFiveQubitStabilizers = {"XZZXI", "IXZZX", "XIXZZ",
                                                              "ZXIXZ"};

}  // namespace

StateVector haar_state(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<complex_t> amps(dim_for_qubits(n_qubits));
    for (auto& a : amps) {
        a = complex_t{rng.normal(), rng.normal()};
    }
    return StateVector::normalized(n_qubits, std::move(amps));
}

StateVector sine_state(int n_qubits) {
    const std::size_t dim = dim_for_qubits(n_qubits);
    std::vector<complex_t> amps(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double x = (static_cast<double>(k) + 0.5) / static_cast<double>(dim);
        amps[k] = complex_t{std::sin(std::numbers::pi * x), 0.0};
    }
    return StateVector::normalized(n_qubits, std::move(amps));
}

StateVector gaussian_state(int n_qubits, double mu, double sigma) {
    if (sigma <= 0.0) {
        throw std::invalid_argument("gaussian_state: sigma must be positive");
    }
    const std::size_t dim = dim_for_qubits(n_qubits);
    std::vector<complex_t> amps(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double x = (static_cast<double>(k) + 0.5) / static_cast<double>(dim);
        const double z = (x - mu) / sigma;
        amps[k] = complex_t{std::exp(-0.5 * z * z), 0.0};
    }
    return StateVector::normalized(n_qubits, std::move(amps));
}

StateVector amplitude_state(int n_qubits, const std::vector<double>& values) {
    const std::size_t dim = dim_for_qubits(n_qubits);
    if (values.empty() || values.size() > dim) {
        throw std::invalid_argument("amplitude_state: need 1..2^n values");
    }
    std::vector<complex_t> amps(dim, complex_t{0.0, 0.0});
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < 0.0) {
            throw std::invalid_argument("amplitude_state: values must be non-negative");
        }
        amps[k] = complex_t{values[k], 0.0};
    }
    return StateVector::normalized(n_qubits, std::move(amps));  // throws on zero norm
}

StateVector qec5_codeword(int logical_bit) {
    if (logical_bit != 0 && logical_bit != 1) {
        throw std::invalid_argument("qec5_codeword: logical bit must be 0 or 1");
    }
    constexpr int n = 5;
    std::vector<complex_t> v(dim_for_qubits(n), complex_t{0.0, 0.0});
    v[0] = complex_t{1.0, 0.0};
    if (logical_bit == 1) {
        sim::apply_pauli_string(v, n, "XXXXX");
    }
    for (const char* stabilizer : kFiveQubitStabilizers) {
        std::vector<complex_t> image(v);
        sim::apply_pauli_string(image, n, stabilizer);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += image[i];
        }
    }
    return StateVector::normalized(n, std::move(v));
}

const std::vector<double>& synthetic_image_4x4() {
    static const std::vector<double> pixels = {
        0.05, 0.20, 0.45, 0.10,  //
        0.15, 0.75, 0.95, 0.30,  //
        0.10, 0.60, 0.80, 0.25,  //
        0.02, 0.15, 0.35, 0.08,
    };
    return pixels;
}

StateVector TargetSpec::generate() const {
    if (kind == "haar") {
        return haar_state(n_qubits, seed);
    }
    if (kind == "sine") {
        return sine_state(n_qubits);
    }
    if (kind == "gaussian") {
        return gaussian_state(n_qubits, mu, sigma);
    }
    if (kind == "amplitude") {
        return amplitude_state(n_qubits, values);
    }
    if (kind == "qec5") {
        if (n_qubits != 5) {
            throw std::invalid_argument("TargetSpec: qec5 requires n_qubits = 5");
        }
        return qec5_codeword(logical_bit);
    }
    if (kind == "image4x4") {
        if (n_qubits != 4) {
            throw std::invalid_argument("TargetSpec: image4x4 requires n_qubits = 4");
        }
        return amplitude_state(4, synthetic_image_4x4());
    }
    throw std::invalid_argument("TargetSpec: unknown kind '" + kind + "'");
}

}  // namespace robustprep::prep
