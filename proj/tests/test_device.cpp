#include <doctest.h>

#include <cmath>
#include <numbers>

#include "robustprep/device/device.hpp"
#include "robustprep/prep/random_circuit.hpp"
#include "robustprep/qcore/metrics.hpp"
#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/simulator.hpp"
#include "support/oracles.hpp"

using namespace robustprep;
using device::DeviceCounts;
using device::MeasurementSetting;
using device::NoiseModel;

namespace {

constexpr double kPi = std::numbers::pi;

Circuit single_rx() {
    Circuit circuit;
    circuit.n_qubits = 1;
    circuit.n_params = 1;
    circuit.ops.push_back(CircuitOp::param(GateKind::RX, {0}, 0));
    return circuit;
}

double fraction_of(const DeviceCounts& counts, const std::string& bits) {
    const auto it = counts.histogram.find(bits);
    const double hit = it == counts.histogram.end() ? 0.0 : it->second;
    return hit / static_cast<double>(counts.shots);
}

}  // namespace

TEST_CASE("zero noise, empty circuit: every shot reads the all-zeros string") {
    Circuit empty;
    empty.n_qubits = 3;
    const MeasurementSetting setting{"ZZZ"};
    const auto counts = device::execute(empty, {}, {&setting, 1}, 2048, NoiseModel::ideal());
    REQUIRE(counts.size() == 1);
    CHECK(counts[0].histogram.size() == 1);
    CHECK(fraction_of(counts[0], "000") == 1.0);
}

TEST_CASE("readout confusion flips the expected fraction of shots") {
    Circuit empty;
    empty.n_qubits = 1;
    NoiseModel noise;
    noise.readout = {device::symmetric_confusion(0.1)};
    noise.seed = 17;
    const MeasurementSetting setting{"Z"};
    const std::int64_t shots = 10000;
    const auto counts = device::execute(empty, {}, {&setting, 1}, shots, noise);
    // Binomial oracle: fraction of "1" = 0.1 within 3 sigma = 0.009.
    CHECK(std::abs(fraction_of(counts[0], "1") - 0.1) <
          3.0 * std::sqrt(0.1 * 0.9 / static_cast<double>(shots)));
}

TEST_CASE("multiplicative angle distortion: RX(pi) with epsilon = 0.05") {
    NoiseModel noise;
    noise.with_coherent(GateKind::RX, 0.05);
    const std::vector<double> theta = {kPi};
    const auto probs =
        device::exact_outcome_distribution(single_rx(), theta, MeasurementSetting{"Z"}, noise);
    const double expected = std::pow(std::sin(1.05 * kPi / 2.0), 2.0);
    CHECK(probs[1] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.99384).epsilon(1e-4));
}

TEST_CASE("true_output_state: consistency, contraction, and depolarizing algebra") {
    const Circuit circuit = prep::random_circuit(3, 6, 4, 515);
    Rng rng(9);
    std::vector<double> theta(6);
    for (auto& t : theta) {
        t = rng.uniform(-kPi, kPi);
    }

    // Zero noise reproduces the pure simulator state.
    const DensityMatrix ideal = device::true_output_state(circuit, theta, NoiseModel::ideal());
    const Eigen::VectorXcd psi = sim::forward(circuit, theta).state.to_eigen();
    CHECK(oracle::max_abs_diff(ideal.entries(), psi * psi.adjoint()) < 1e-10);

    // Any depolarizing strength strictly contracts purity.
    NoiseModel depol;
    depol.with_depolarizing(0.01, 0.02);
    const DensityMatrix noisy = device::true_output_state(circuit, theta, depol);
    CHECK(purity(noisy) < 1.0);

    // Single RX(pi) with p1 = 0.1: fidelity to the ideal -i|1> is 1 - p/2.
    NoiseModel p1_only;
    p1_only.with_depolarizing(0.1, 0.0);
    const std::vector<double> pi_angle = {kPi};
    const DensityMatrix rx_state = device::true_output_state(single_rx(), pi_angle, p1_only);
    const StateVector one = StateVector::computational_basis(1, 1);
    CHECK(fidelity(one, rx_state) == doctest::Approx(0.95).epsilon(1e-10));
}

TEST_CASE("determinism: identical inputs and seed give identical counts") {
    const Circuit circuit = prep::random_circuit(2, 4, 3, 101);
    Rng rng(5);
    std::vector<double> theta(4);
    for (auto& t : theta) {
        t = rng.uniform(-1.0, 1.0);
    }
    NoiseModel noise;
    noise.with_uniform_coherent(0.02).with_depolarizing(0.001, 0.005);
    noise.readout = {device::symmetric_confusion(0.02), device::symmetric_confusion(0.03)};
    noise.seed = 99;
    const std::vector<MeasurementSetting> settings = {MeasurementSetting{"XY"},
                                                      MeasurementSetting{"ZZ"}};
    const auto a = device::execute(circuit, theta, settings, 512, noise);
    const auto b = device::execute(circuit, theta, settings, 512, noise);
    REQUIRE(a.size() == b.size());
    for (std::size_t s = 0; s < a.size(); ++s) {
        CHECK(a[s].histogram == b[s].histogram);
    }
}

TEST_CASE("noiseless sampling matches the Born distribution (chi-square)") {
    const Circuit circuit = prep::random_circuit(3, 5, 4, 246);
    Rng rng(31);
    std::vector<double> theta(5);
    for (auto& t : theta) {
        t = rng.uniform(-kPi, kPi);
    }
    const MeasurementSetting setting{"XYZ"};
    const std::int64_t shots = 100000;
    NoiseModel noise;
    noise.seed = 4;
    const auto counts = device::execute(circuit, theta, {&setting, 1}, shots, noise);

    // Independent expected distribution: oracle state, then explicit basis
    // rotations, then Born probabilities.
    Eigen::VectorXcd psi = oracle::circuit_state(circuit, theta);
    Eigen::MatrixXcd rotation = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 2; q >= 0; --q) {
        rotation = Eigen::kroneckerProduct(
                       rotation,
                       basis_change_unitary(setting.bases[static_cast<std::size_t>(q)]))
                       .eval();
    }
    psi = rotation * psi;

    double statistic = 0.0;
    int dof = -1;
    for (std::uint64_t b = 0; b < 8; ++b) {
        const double expected = std::norm(psi[static_cast<Eigen::Index>(b)]) *
                                static_cast<double>(shots);
        if (expected < 5.0) {
            continue;  // sparse bins excluded from the statistic
        }
        const double observed =
            counts[0].histogram.count(device::index_to_bitstring(b, 3))
                ? counts[0].histogram.at(device::index_to_bitstring(b, 3))
                : 0.0;
        statistic += (observed - expected) * (observed - expected) / expected;
        ++dof;
    }
    REQUIRE(dof >= 1);
    CHECK(oracle::chi_square_sf(statistic, dof) > 0.001);
}

TEST_CASE("channel validity after every evolution step") {
    const Circuit circuit = prep::random_circuit(3, 6, 5, 135);
    Rng rng(3);
    std::vector<double> theta(6);
    for (auto& t : theta) {
        t = rng.uniform(-kPi, kPi);
    }
    NoiseModel noise;
    noise.with_uniform_coherent(0.03, 0.01).with_depolarizing(0.002, 0.01);
    int checked = 0;
    device::detail::evolve_density_matrix(
        circuit, theta, noise, [&](const Eigen::MatrixXcd& rho) {
            CHECK(hermiticity_deviation(rho) < 1e-9);
            CHECK(std::abs(rho.trace().real() - 1.0) < 1e-9);
            CHECK(min_eigenvalue(rho) > -1e-9);
            ++checked;
        });
    CHECK(checked == static_cast<int>(circuit.ops.size()));
}

TEST_CASE("non-parameterized gates distort only via explicit overrides") {
    Circuit x_circ;
    x_circ.n_qubits = 1;
    x_circ.ops.push_back(CircuitOp::plain(GateKind::X, {0}));

    // Default: per-kind coherent noise does not touch X.
    NoiseModel kind_only;
    kind_only.with_coherent(GateKind::RX, 0.05);
    const auto undistorted =
        device::exact_outcome_distribution(x_circ, {}, MeasurementSetting{"Z"}, kind_only);
    CHECK(undistorted[1] == doctest::Approx(1.0).epsilon(1e-12));

    // Override: X behaves as its equivalent rotation RX(pi (1 + eps)).
    NoiseModel with_override;
    with_override.overrides[{GateKind::X, {0}}] = device::GateNoise{0.05, 0.0};
    const auto distorted = device::exact_outcome_distribution(
        x_circ, {}, MeasurementSetting{"Z"}, with_override);
    CHECK(distorted[1] ==
          doctest::Approx(std::pow(std::sin(1.05 * kPi / 2.0), 2.0)).epsilon(1e-12));
}

TEST_CASE("execute validation errors") {
    const Circuit circuit = single_rx();
    const std::vector<double> theta = {0.1};
    const MeasurementSetting wrong_length{"ZZ"};
    CHECK_THROWS(device::execute(circuit, theta, {&wrong_length, 1}, 16,
                                 NoiseModel::ideal()));
    const MeasurementSetting ok{"Z"};
    const std::vector<double> bad_theta = {0.1, 0.2};
    CHECK_THROWS(device::execute(circuit, bad_theta, {&ok, 1}, 16, NoiseModel::ideal()));
    CHECK_THROWS(device::execute(circuit, theta, {&ok, 1}, 0, NoiseModel::ideal()));

    NoiseModel bad_noise;
    bad_noise.p1 = 1.5;
    CHECK_THROWS(bad_noise.validate(1));
    NoiseModel bad_readout;
    Eigen::Matrix2d a;
    a << 0.9, 0.2, 0.2, 0.9;  // columns do not sum to 1
    bad_readout.readout = {a};
    CHECK_THROWS(bad_readout.validate(1));
    NoiseModel big_eps;
    big_eps.coherent[GateKind::RX] = device::GateNoise{0.7, 0.0};
    CHECK_THROWS(big_eps.validate(1));
}

TEST_CASE("device counters accumulate per setting") {
    device::EmulatedDevice dev(NoiseModel::ideal());
    Circuit empty;
    empty.n_qubits = 2;
    const std::vector<MeasurementSetting> settings = {MeasurementSetting{"ZZ"},
                                                      MeasurementSetting{"XX"},
                                                      MeasurementSetting{"YY"}};
    (void)dev.execute(empty, {}, settings, 128);
    (void)dev.execute(empty, {}, settings, 128);
    CHECK(dev.setting_executions() == 6);
    CHECK(dev.total_shots() == 6 * 128);
    dev.reset_counters();
    CHECK(dev.setting_executions() == 0);
}
