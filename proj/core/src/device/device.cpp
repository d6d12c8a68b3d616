#include "robustprep/device/device.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "robustprep/qcore/rng.hpp"

namespace robustprep::device {

namespace {

using namespace std::complex_literals;

// rho <- U rho U^dagger for a single-qubit unitary.
void conjugate_single_qubit(Eigen::MatrixXcd& rho, const Eigen::Matrix2cd& u, int qubit) {
    const auto dim = static_cast<std::size_t>(rho.rows());
    const std::size_t step = std::size_t{1} << qubit;
    // Left multiply: transform row pairs within every column.
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
        for (std::size_t base = 0; base < dim; base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                const complex_t a0 = rho(static_cast<Eigen::Index>(i), c);
                const complex_t a1 = rho(static_cast<Eigen::Index>(i + step), c);
                rho(static_cast<Eigen::Index>(i), c) = u(0, 0) * a0 + u(0, 1) * a1;
                rho(static_cast<Eigen::Index>(i + step), c) = u(1, 0) * a0 + u(1, 1) * a1;
            }
        }
    }
    // Right multiply by U^dagger: conjugate kernel over column pairs per row.
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        for (std::size_t base = 0; base < dim; base += 2 * step) {
            for (std::size_t j = base; j < base + step; ++j) {
                const complex_t a0 = rho(r, static_cast<Eigen::Index>(j));
                const complex_t a1 = rho(r, static_cast<Eigen::Index>(j + step));
                rho(r, static_cast<Eigen::Index>(j)) =
                    a0 * std::conj(u(0, 0)) + a1 * std::conj(u(0, 1));
                rho(r, static_cast<Eigen::Index>(j + step)) =
                    a0 * std::conj(u(1, 0)) + a1 * std::conj(u(1, 1));
            }
        }
    }
}

void conjugate_two_qubit(Eigen::MatrixXcd& rho, const Eigen::Matrix4cd& u, int qubit_lo,
                         int qubit_hi) {
    const auto dim = static_cast<std::size_t>(rho.rows());
    const std::size_t mask_lo = std::size_t{1} << qubit_lo;
    const std::size_t mask_hi = std::size_t{1} << qubit_hi;
    std::array<complex_t, 4> x;
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mask_lo) != 0 || (i & mask_hi) != 0) {
                continue;
            }
            const std::array<std::size_t, 4> idx = {i, i | mask_lo, i | mask_hi,
                                                    i | mask_lo | mask_hi};
            for (int k = 0; k < 4; ++k) {
                x[static_cast<std::size_t>(k)] =
                    rho(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]), c);
            }
            for (int r = 0; r < 4; ++r) {
                complex_t acc{0.0, 0.0};
                for (int k = 0; k < 4; ++k) {
                    acc += u(r, k) * x[static_cast<std::size_t>(k)];
                }
                rho(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]), c) = acc;
            }
        }
    }
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((j & mask_lo) != 0 || (j & mask_hi) != 0) {
                continue;
            }
            const std::array<std::size_t, 4> idx = {j, j | mask_lo, j | mask_hi,
                                                    j | mask_lo | mask_hi};
            for (int k = 0; k < 4; ++k) {
                x[static_cast<std::size_t>(k)] =
                    rho(r, static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]));
            }
            for (int cc = 0; cc < 4; ++cc) {
                complex_t acc{0.0, 0.0};
                for (int k = 0; k < 4; ++k) {
                    acc += x[static_cast<std::size_t>(k)] * std::conj(u(cc, k));
                }
                rho(r, static_cast<Eigen::Index>(idx[static_cast<std::size_t>(cc)])) = acc;
            }
        }
    }
}

// rho <- (1-p) rho + p * (I/2 on `qubit`) x tr_qubit(rho).
void depolarize_single(Eigen::MatrixXcd& rho, int qubit, double p) {
    if (p <= 0.0) {
        return;
    }
    const auto dim = static_cast<std::size_t>(rho.rows());
    const std::size_t m = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & m) != 0) {
            continue;
        }
        for (std::size_t j = 0; j < dim; ++j) {
            if ((j & m) != 0) {
                continue;
            }
            const auto i0 = static_cast<Eigen::Index>(i);
            const auto i1 = static_cast<Eigen::Index>(i | m);
            const auto j0 = static_cast<Eigen::Index>(j);
            const auto j1 = static_cast<Eigen::Index>(j | m);
            const complex_t avg = (rho(i0, j0) + rho(i1, j1)) / 2.0;
            rho(i0, j0) = (1.0 - p) * rho(i0, j0) + p * avg;
            rho(i1, j1) = (1.0 - p) * rho(i1, j1) + p * avg;
            rho(i0, j1) *= (1.0 - p);
            rho(i1, j0) *= (1.0 - p);
        }
    }
}

// Two-qubit version with the replaced block I/4 x tr_{ab}(rho).
void depolarize_pair(Eigen::MatrixXcd& rho, int qubit_a, int qubit_b, double p) {
    if (p <= 0.0) {
        return;
    }
    const auto dim = static_cast<std::size_t>(rho.rows());
    const std::size_t ma = std::size_t{1} << qubit_a;
    const std::size_t mb = std::size_t{1} << qubit_b;
    const std::array<std::size_t, 4> offsets = {0, ma, mb, ma | mb};
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & (ma | mb)) != 0) {
            continue;
        }
        for (std::size_t j = 0; j < dim; ++j) {
            if ((j & (ma | mb)) != 0) {
                continue;
            }
            complex_t avg{0.0, 0.0};
            for (std::size_t off : offsets) {
                avg += rho(static_cast<Eigen::Index>(i | off),
                           static_cast<Eigen::Index>(j | off));
            }
            avg /= 4.0;
            for (std::size_t oi : offsets) {
                for (std::size_t oj : offsets) {
                    auto& cell = rho(static_cast<Eigen::Index>(i | oi),
                                     static_cast<Eigen::Index>(j | oj));
                    cell = (1.0 - p) * cell + (oi == oj ? p * avg : complex_t{0.0, 0.0});
                }
            }
        }
    }
}

const GateNoise* lookup_noise(const NoiseModel& noise, const CircuitOp& op) {
    if (const auto it = noise.overrides.find({op.kind, op.qubits});
        it != noise.overrides.end()) {
        return &it->second;
    }
    if (gate_is_parameterized(op.kind)) {
        if (const auto it = noise.coherent.find(op.kind); it != noise.coherent.end()) {
            return &it->second;
        }
    }
    return nullptr;
}

// Gate matrix after coherent distortion. Parameterized gates distort the
// bound angle; non-parameterized gates are distorted via their equivalent
// rotation (valid up to global phase, which cancels in rho -> U rho U^dag).
Eigen::MatrixXcd distorted_unitary(const CircuitOp& op, std::span<const double> params,
                                   const NoiseModel& noise) {
    const GateNoise* gn = lookup_noise(noise, op);
    if (gate_is_parameterized(op.kind)) {
        double angle = resolve_angle(op, params);
        if (gn != nullptr) {
            angle = angle * (1.0 + gn->epsilon) + gn->delta;
        }
        return gate_unitary(op.kind, angle);
    }
    if (gn == nullptr) {
        return gate_unitary(op.kind);
    }
    const EquivalentRotation eq = gate_equivalent_rotation(op.kind);
    const double angle = eq.angle * (1.0 + gn->epsilon) + gn->delta;
    const auto d = eq.generator.rows();
    return std::cos(angle / 2.0) * Eigen::MatrixXcd::Identity(d, d) -
           1i * std::sin(angle / 2.0) * eq.generator;
}

std::vector<double> rotated_diagonal(const Eigen::MatrixXcd& rho,
                                     const MeasurementSetting& setting) {
    Eigen::MatrixXcd rotated = rho;
    for (int q = 0; q < static_cast<int>(setting.bases.size()); ++q) {
        const char basis = setting.bases[static_cast<std::size_t>(q)];
        if (basis == 'Z') {
            continue;
        }
        conjugate_single_qubit(rotated, basis_change_unitary(basis), q);
    }
    std::vector<double> probs(static_cast<std::size_t>(rotated.rows()));
    double total = 0.0;
    for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::max(rotated(i, i).real(), 0.0);
        total += probs[static_cast<std::size_t>(i)];
    }
    if (total <= 0.0) {
        throw std::runtime_error("device: degenerate outcome distribution");
    }
    for (auto& p : probs) {
        p /= total;
    }
    return probs;
}

void apply_confusion(std::vector<double>& probs, const std::vector<Eigen::Matrix2d>& readout) {
    if (readout.empty()) {
        return;
    }
    const std::size_t dim = probs.size();
    for (int q = 0; q < static_cast<int>(readout.size()); ++q) {
        const Eigen::Matrix2d& a = readout[static_cast<std::size_t>(q)];
        const std::size_t step = std::size_t{1} << q;
        for (std::size_t base = 0; base < dim; base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                const double p0 = probs[i];
                const double p1 = probs[i + step];
                probs[i] = a(0, 0) * p0 + a(0, 1) * p1;
                probs[i + step] = a(1, 0) * p0 + a(1, 1) * p1;
            }
        }
    }
}

std::map<std::string, double> sample_histogram(const std::vector<double>& probs,
                                               std::int64_t shots, int n_qubits, Rng& rng) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    std::map<std::string, double> histogram;
    std::vector<std::int64_t> tallies(probs.size(), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::size_t>(std::distance(cdf.begin(), it));
        ++tallies[std::min(idx, probs.size() - 1)];
    }
    for (std::size_t i = 0; i < tallies.size(); ++i) {
        if (tallies[i] > 0) {
            histogram[index_to_bitstring(i, n_qubits)] = static_cast<double>(tallies[i]);
        }
    }
    return histogram;
}

}  // namespace

void MeasurementSetting::validate(int n_qubits) const {
    if (bases.size() != static_cast<std::size_t>(n_qubits)) {
        throw std::invalid_argument("MeasurementSetting: expected " +
                                    std::to_string(n_qubits) + " basis letters");
    }
    for (char b : bases) {
        if (b != 'X' && b != 'Y' && b != 'Z') {
            throw std::invalid_argument(std::string("MeasurementSetting: invalid basis '") +
                                        b + "'");
        }
    }
}

std::string index_to_bitstring(std::uint64_t index, int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> q) & 1ULL) {
            bits[static_cast<std::size_t>(q)] = '1';
        }
    }
    return bits;
}

std::uint64_t bitstring_to_index(const std::string& bits) {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw std::invalid_argument("bitstring_to_index: invalid character");
        }
    }
    return index;
}

namespace detail {

Eigen::MatrixXcd evolve_density_matrix(const Circuit& circuit, std::span<const double> params,
                                       const NoiseModel& noise,
                                       const EvolutionObserver& observer) {
    circuit.validate();
    if (static_cast<int>(params.size()) != circuit.n_params) {
        throw std::invalid_argument("device: parameter count mismatch");
    }
    noise.validate(circuit.n_qubits);
    const auto d = static_cast<Eigen::Index>(dim_for_qubits(circuit.n_qubits));
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    rho(0, 0) = 1.0;
    for (const auto& op : circuit.ops) {
        const Eigen::MatrixXcd u = distorted_unitary(op, params, noise);
        if (gate_arity(op.kind) == 1) {
            conjugate_single_qubit(rho, u, op.qubits[0]);
            depolarize_single(rho, op.qubits[0], noise.p1);
        } else {
            conjugate_two_qubit(rho, u, op.qubits[0], op.qubits[1]);
            depolarize_pair(rho, op.qubits[0], op.qubits[1], noise.p2);
        }
        if (observer) {
            observer(rho);
        }
    }
    return rho;
}

}  // namespace detail

std::vector<DeviceCounts> execute(const Circuit& circuit, std::span<const double> params,
                                  std::span<const MeasurementSetting> settings,
                                  std::int64_t shots_per_setting, const NoiseModel& noise) {
    if (shots_per_setting < 1) {
        throw std::invalid_argument("device: shots_per_setting must be >= 1");
    }
    for (const auto& setting : settings) {
        setting.validate(circuit.n_qubits);
    }
    const Eigen::MatrixXcd rho = detail::evolve_density_matrix(circuit, params, noise);
    std::vector<DeviceCounts> results;
    results.reserve(settings.size());
    for (std::size_t s = 0; s < settings.size(); ++s) {
        std::vector<double> probs = rotated_diagonal(rho, settings[s]);
        apply_confusion(probs, noise.readout);
        Rng rng(derive_seed(noise.seed, s));
        results.push_back(DeviceCounts{
            settings[s], shots_per_setting,
            sample_histogram(probs, shots_per_setting, circuit.n_qubits, rng)});
    }
    return results;
}

DensityMatrix true_output_state(const Circuit& circuit, std::span<const double> params,
                                const NoiseModel& noise) {
    return DensityMatrix(circuit.n_qubits,
                         detail::evolve_density_matrix(circuit, params, noise));
}

std::vector<double> exact_outcome_distribution(const Circuit& circuit,
                                               std::span<const double> params,
                                               const MeasurementSetting& setting,
                                               const NoiseModel& noise) {
    setting.validate(circuit.n_qubits);
    const Eigen::MatrixXcd rho = detail::evolve_density_matrix(circuit, params, noise);
    std::vector<double> probs = rotated_diagonal(rho, setting);
    apply_confusion(probs, noise.readout);
    return probs;
}

std::vector<DeviceCounts> EmulatedDevice::execute(const Circuit& circuit,
                                                  std::span<const double> params,
                                                  std::span<const MeasurementSetting> settings,
                                                  std::int64_t shots_per_setting) {
    auto results = device::execute(circuit, params, settings, shots_per_setting, noise_);
    setting_executions_ += settings.size();
    total_shots_ += static_cast<std::uint64_t>(shots_per_setting) * settings.size();
    return results;
}

void EmulatedDevice::reset_counters() {
    setting_executions_ = 0;
    total_shots_ = 0;
}

}  // namespace robustprep::device
