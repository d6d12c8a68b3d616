#include <doctest.h>

#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "robustprep/device/device.hpp"
#include "robustprep/qcore/metrics.hpp"
#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/simulator.hpp"
#include "robustprep/tomo/tomography.hpp"
#include "support/oracles.hpp"

using namespace robustprep;
using device::DeviceCounts;
using device::MeasurementSetting;
using device::NoiseModel;

namespace {

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Circuit ghz3() {
    Circuit circuit;
    circuit.n_qubits = 3;
    circuit.ops.push_back(CircuitOp::plain(GateKind::H, {0}));
    circuit.ops.push_back(CircuitOp::plain(GateKind::CNOT, {0, 1}));
    circuit.ops.push_back(CircuitOp::plain(GateKind::CNOT, {1, 2}));
    return circuit;
}

// Exact outcome distribution of a pure state measured in a basis setting,
// computed against the full-matrix oracle.
std::vector<double> born_distribution(const Eigen::VectorXcd& psi,
                                      const MeasurementSetting& setting) {
    const int n = static_cast<int>(setting.bases.size());
    Eigen::MatrixXcd rotation = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        rotation = Eigen::kroneckerProduct(
                       rotation,
                       basis_change_unitary(setting.bases[static_cast<std::size_t>(q)]))
                       .eval();
    }
    const Eigen::VectorXcd rotated = rotation * psi;
    std::vector<double> probs(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < rotated.size(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::norm(rotated[i]);
    }
    return probs;
}

}  // namespace

TEST_CASE("snapshot_from_outcome single-qubit factors") {
    const auto z0 = tomo::snapshot_from_outcome(MeasurementSetting{"Z"}, "0");
    Eigen::Matrix2cd expected;
    expected << 2.0, 0.0, 0.0, -1.0;
    CHECK(oracle::max_abs_diff(z0.materialize(), expected) < 1e-12);

    const auto x0 = tomo::snapshot_from_outcome(MeasurementSetting{"X"}, "0");
    expected << 0.5, 1.5, 1.5, 0.5;
    CHECK(oracle::max_abs_diff(x0.materialize(), expected) < 1e-12);

    // Every snapshot has unit trace and is Hermitian.
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(4));
        std::string bases, outcome;
        for (int q = 0; q < n; ++q) {
            bases.push_back("XYZ"[rng.uniform_int(3)]);
            outcome.push_back("01"[rng.uniform_int(2)]);
        }
        const auto snap = tomo::snapshot_from_outcome(MeasurementSetting{bases}, outcome);
        const Eigen::MatrixXcd m = snap.materialize();
        CHECK(std::abs(m.trace().real() - 1.0) < 1e-12);
        CHECK(hermiticity_deviation(m) < 1e-12);
    }

    CHECK_THROWS(tomo::snapshot_from_outcome(MeasurementSetting{"XX"}, "0"));
}

TEST_CASE("exact-distribution inversion identities") {
    // |0> over the three single-qubit settings with equal weight -> |0><0|.
    const std::vector<MeasurementSetting> settings = {MeasurementSetting{"X"},
                                                      MeasurementSetting{"Y"},
                                                      MeasurementSetting{"Z"}};
    const std::vector<std::vector<double>> dists = {{0.5, 0.5}, {0.5, 0.5}, {1.0, 0.0}};
    const auto estimate = tomo::estimate_state_from_distributions(settings, dists);
    Eigen::Matrix2cd zero_proj = Eigen::Matrix2cd::Zero();
    zero_proj(0, 0) = 1.0;
    CHECK(oracle::max_abs_diff(estimate.entries(), zero_proj) < 1e-12);

    // Maximally mixed input: uniform distributions in every basis -> I/2.
    const std::vector<std::vector<double>> uniform = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
    const auto mixed = tomo::estimate_state_from_distributions(settings, uniform);
    CHECK(oracle::max_abs_diff(mixed.entries(), Eigen::Matrix2cd::Identity() / 2.0) < 1e-12);

    // A random 2-qubit pure state fed exact Born distributions over all nine
    // settings reconstructs exactly.
    const Circuit circuit = ghz3();  // reuse ops prefix for a 2-qubit circuit
    Circuit two;
    two.n_qubits = 2;
    two.ops.push_back(CircuitOp::plain(GateKind::H, {0}));
    two.ops.push_back(CircuitOp::plain(GateKind::CNOT, {0, 1}));
    two.ops.push_back(CircuitOp::fixed(GateKind::RY, {1}, 0.7));
    const Eigen::VectorXcd psi = oracle::circuit_state(two, {});
    const auto plan = tomo::build_full_plan(2, 1);
    std::vector<std::vector<double>> exact;
    for (const auto& setting : plan.settings) {
        exact.push_back(born_distribution(psi, setting));
    }
    const auto recon = tomo::estimate_state_from_distributions(plan.settings, exact);
    CHECK(oracle::max_abs_diff(recon.entries(), psi * psi.adjoint()) < 1e-9);
    (void)circuit;
}

TEST_CASE("build_plan shapes and determinism") {
    CHECK(tomo::build_full_plan(4, 1024).settings.size() == 81);

    const auto single = tomo::build_full_plan(1, 8).settings;
    REQUIRE(single.size() == 3);
    CHECK(single[0].bases == "X");
    CHECK(single[1].bases == "Y");
    CHECK(single[2].bases == "Z");

    const auto sampled = tomo::build_sampled_plan(4, 40, 1024, 7);
    CHECK(sampled.settings.size() == 40);
    std::set<std::string> distinct;
    for (const auto& s : sampled.settings) {
        distinct.insert(s.bases);
    }
    CHECK(distinct.size() == 40);
    const auto sampled_again = tomo::build_sampled_plan(4, 40, 1024, 7);
    for (std::size_t i = 0; i < 40; ++i) {
        CHECK(sampled.settings[i].bases == sampled_again.settings[i].bases);
    }

    CHECK_THROWS(tomo::build_sampled_plan(1, 4, 16, 0));  // k > 3^n
    CHECK_THROWS(tomo::build_sampled_plan(2, 0, 16, 0));
}

TEST_CASE("GHZ Monte-Carlo reconstruction: trace distance < 0.05") {
    const Circuit circuit = ghz3();
    NoiseModel noise;
    noise.seed = 20240;
    const auto plan = tomo::build_full_plan(3, 4096);
    const auto counts = device::execute(circuit, {}, plan.settings, 4096, noise);
    const auto estimate = tomo::estimate_state(counts);

    const Eigen::VectorXcd psi = oracle::circuit_state(circuit, {});
    CHECK(trace_distance(estimate.entries(), psi * psi.adjoint()) < 0.05);
    CHECK(std::abs(estimate.entries().trace().real() - 1.0) < 1e-9);
    CHECK(hermiticity_deviation(estimate.entries()) < 1e-9);
}

TEST_CASE("unbiasedness: sampled-mode estimates average to the true state") {
    Circuit two;
    two.n_qubits = 2;
    two.ops.push_back(CircuitOp::plain(GateKind::H, {0}));
    two.ops.push_back(CircuitOp::plain(GateKind::CNOT, {0, 1}));
    two.ops.push_back(CircuitOp::fixed(GateKind::RY, {0}, 0.9));
    const Eigen::VectorXcd psi = oracle::circuit_state(two, {});
    const Eigen::MatrixXcd truth = psi * psi.adjoint();

    constexpr int kRuns = 200;
    std::vector<Eigen::MatrixXcd> estimates;
    estimates.reserve(kRuns);
    for (int run = 0; run < kRuns; ++run) {
        const auto plan =
            tomo::build_sampled_plan(2, 3, 256, derive_seed(42, static_cast<std::uint64_t>(run)));
        NoiseModel noise;
        noise.seed = derive_seed(43, static_cast<std::uint64_t>(run));
        const auto counts = device::execute(two, {}, plan.settings, 256, noise);
        estimates.push_back(tomo::estimate_state(counts).entries());
    }
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto& e : estimates) {
        mean += e;
    }
    mean /= static_cast<double>(kRuns);

    // Entrywise: |mean - truth| < 3 standard errors (real and imaginary).
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            double var_re = 0.0, var_im = 0.0;
            for (const auto& e : estimates) {
                var_re += std::pow(e(r, c).real() - mean(r, c).real(), 2.0);
                var_im += std::pow(e(r, c).imag() - mean(r, c).imag(), 2.0);
            }
            var_re /= (kRuns - 1);
            var_im /= (kRuns - 1);
            const double se_re = std::sqrt(var_re / kRuns);
            const double se_im = std::sqrt(var_im / kRuns);
            CHECK(std::abs(mean(r, c).real() - truth(r, c).real()) <=
                  3.0 * se_re + 1e-12);
            CHECK(std::abs(mean(r, c).imag() - truth(r, c).imag()) <=
                  3.0 * se_im + 1e-12);
        }
    }
}

TEST_CASE("mitigation inverts an exact confusion distortion") {
    Circuit two;
    two.n_qubits = 2;
    two.ops.push_back(CircuitOp::plain(GateKind::H, {0}));
    two.ops.push_back(CircuitOp::plain(GateKind::CNOT, {0, 1}));
    const Eigen::VectorXcd psi = oracle::circuit_state(two, {});
    const std::vector<Eigen::Matrix2d> confusion = {device::symmetric_confusion(0.05),
                                                    device::symmetric_confusion(0.08)};

    const auto plan = tomo::build_full_plan(2, 1);
    std::vector<std::vector<double>> clean, distorted;
    for (const auto& setting : plan.settings) {
        auto probs = born_distribution(psi, setting);
        clean.push_back(probs);
        // Analytic distortion: apply the confusion tensor per qubit.
        std::vector<double> blurred(4, 0.0);
        for (std::size_t read = 0; read < 4; ++read) {
            for (std::size_t truth_idx = 0; truth_idx < 4; ++truth_idx) {
                double weight = 1.0;
                for (int q = 0; q < 2; ++q) {
                    weight *= confusion[static_cast<std::size_t>(q)](
                        static_cast<int>((read >> q) & 1),
                        static_cast<int>((truth_idx >> q) & 1));
                }
                blurred[read] += weight * probs[truth_idx];
            }
        }
        distorted.push_back(std::move(blurred));
    }
    const auto reference = tomo::estimate_state_from_distributions(plan.settings, clean);
    const auto mitigated =
        tomo::estimate_state_from_distributions(plan.settings, distorted, confusion);
    CHECK(oracle::max_abs_diff(reference.entries(), mitigated.entries()) < 1e-9);
}

TEST_CASE("estimate_state error paths") {
    CHECK_THROWS(tomo::estimate_state({}));

    DeviceCounts counts;
    counts.setting = MeasurementSetting{"Z"};
    counts.shots = 4;
    counts.histogram["0"] = 4.0;
    const std::vector<DeviceCounts> one = {counts};

    Eigen::Matrix2d singular;
    singular << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS(tomo::estimate_state(one, std::vector<Eigen::Matrix2d>{singular}));
    CHECK_NOTHROW(tomo::estimate_state(
        one, std::vector<Eigen::Matrix2d>{device::symmetric_confusion(0.02)}));
}
