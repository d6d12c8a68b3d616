#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "robustprep/device/device.hpp"
#include "robustprep/prep/ansatz.hpp"
#include "robustprep/prep/coupling.hpp"
#include "robustprep/prep/random_circuit.hpp"
#include "robustprep/prep/targets.hpp"
#include "robustprep/qcore/metrics.hpp"
#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/simulator.hpp"
#include "robustprep/train/loss.hpp"
#include "robustprep/train/nelder_mead.hpp"
#include "robustprep/train/tasks.hpp"
#include "robustprep/train/trainer.hpp"
#include "support/oracles.hpp"

using namespace robustprep;

namespace {

Circuit path_ansatz(int n_qubits, int n_blocks) {
    prep::AnsatzSpec spec;
    spec.n_qubits = n_qubits;
    spec.coupling = prep::path_coupling(n_qubits);
    spec.n_blocks = n_blocks;
    return prep::build_ansatz(spec);
}

}  // namespace

TEST_CASE("state_loss values and cotangent") {
    const StateVector zero = StateVector::zero_state(1);
    const StateVector one = StateVector::computational_basis(1, 1);
    const DensityMatrix zero_dm = DensityMatrix::from_pure(zero);

    const auto same = train::state_loss(HermitianEstimate::from_pure(zero), zero_dm);
    CHECK(same.loss == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(same.cotangent.cwiseAbs().maxCoeff() == 0.0);

    const auto opposite = train::state_loss(HermitianEstimate::from_pure(one), zero_dm);
    CHECK(opposite.loss == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // Finite-difference consistency of the cotangent along Hermitian
    // perturbation directions.
    Rng rng(404);
    Eigen::MatrixXcd g(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            g(r, c) = complex_t{rng.normal(), rng.normal()};
        }
    }
    Eigen::MatrixXcd rho = (g + g.adjoint()) / 8.0;
    rho -= Eigen::MatrixXcd::Identity(4, 4) * (rho.trace().real() - 1.0) / 4.0;
    const DensityMatrix target = DensityMatrix::from_pure(prep::haar_state(2, 5));
    const auto sl = train::state_loss_raw(rho, target.entries());
    const double h = 1e-7;
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = i; j < 4; ++j) {
            Eigen::MatrixXcd direction = Eigen::MatrixXcd::Zero(4, 4);
            direction(i, j) += 0.5;
            direction(j, i) += 0.5;
            const double fd =
                (train::state_loss_raw(rho + h * direction, target.entries()).loss -
                 train::state_loss_raw(rho - h * direction, target.entries()).loss) /
                (2.0 * h);
            const double analytic = (sl.cotangent * direction).trace().real();
            CHECK(fd == doctest::Approx(analytic).epsilon(1e-6).scale(1.0));
        }
    }

    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS(train::state_loss_raw(skew, zero_dm.entries()));
}

TEST_CASE("optimizers descend a quadratic bowl") {
    const std::vector<double> minimum = {0.3, -0.7, 1.1};
    auto grad_at = [&](std::span<const double> x) {
        std::vector<double> g(3);
        for (std::size_t i = 0; i < 3; ++i) {
            g[i] = 2.0 * (x[i] - minimum[i]);
        }
        return g;
    };
    for (train::OptimizerConfig config :
         {train::OptimizerConfig{train::AdamConfig{}},
          train::OptimizerConfig{train::SgdConfig{}}}) {
        std::vector<double> x = {0.0, 0.0, 0.0};
        train::Optimizer opt(config, 0.05, 3);
        for (int step = 0; step < 800; ++step) {
            opt.step(x, grad_at(x));
        }
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(x[i] == doctest::Approx(minimum[i]).epsilon(1e-3));
        }
    }
}

TEST_CASE("nelder_mead on a quadratic bowl") {
    const std::vector<double> minimum = {0.2, -0.4, 0.9, -1.3};
    auto bowl = [&](const std::vector<double>& x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            acc += (x[i] - minimum[i]) * (x[i] - minimum[i]);
        }
        return acc;
    };
    const auto result = train::nelder_mead_optimize(bowl, std::vector<double>(4, 0.0), 500);
    CHECK(result.evaluations <= 500);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(result.best_params[i] - minimum[i]) < 1e-4);
    }

    const auto starved = train::nelder_mead_optimize(bowl, std::vector<double>(4, 0.0), 6);
    CHECK(starved.budget_exhausted);
    CHECK(starved.best_params.size() == 4);
    CHECK(starved.best_loss <= bowl(std::vector<double>(4, 0.0)));

    CHECK_THROWS(train::nelder_mead_optimize(bowl, std::vector<double>(4, 0.0), 3));
}

TEST_CASE("train_noise_free: already-optimal target stays optimal") {
    const Circuit circuit = path_ansatz(3, 3);
    const StateVector target = StateVector::zero_state(3);
    train::TrainConfig cfg;
    cfg.noise_free_steps = 50;
    cfg.noise_aware_steps = 0;
    const std::vector<double> zeros(static_cast<std::size_t>(circuit.n_params), 0.0);
    const auto report = train::train_noise_free(circuit, target, cfg, zeros);
    CHECK(report.last().sim_fidelity >= 1.0 - 1e-6);
    CHECK(report.steps.size() == 51);  // 50 updates plus the final evaluation
}

TEST_CASE("train_noise_free reaches a 4-qubit Haar target") {
    const Circuit circuit = path_ansatz(4, 12);
    const StateVector target = prep::haar_state(4, 321);
    train::TrainConfig cfg;
    cfg.noise_free_steps = 500;
    cfg.noise_aware_steps = 0;
    cfg.seed = 8;
    const auto report = train::train_noise_free(circuit, target, cfg);
    CHECK(report.last().sim_fidelity >= 0.99);

    // The squared-Frobenius option is allowed noise-free.
    train::TrainConfig squared = cfg;
    squared.loss = train::LossKind::frobenius_squared;
    squared.noise_free_steps = 150;
    CHECK_NOTHROW(train::train_noise_free(circuit, target, squared));
}

TEST_CASE("finetune rejects the linear-gradient loss") {
    const Circuit circuit = path_ansatz(2, 1);
    const StateVector target = prep::haar_state(2, 1);
    device::EmulatedDevice dev(device::NoiseModel::ideal());
    train::TrainConfig cfg;
    cfg.noise_aware_steps = 1;
    cfg.loss = train::LossKind::frobenius_squared;
    const std::vector<double> theta0(static_cast<std::size_t>(circuit.n_params), 0.1);
    CHECK_THROWS(train::finetune_noise_aware(circuit, theta0, target, dev, cfg));
}

TEST_CASE("finetune on a zero-noise device tracks the noise-free phase") {
    const Circuit circuit = path_ansatz(3, 6);
    const StateVector target = prep::haar_state(3, 99);
    train::TrainConfig cfg;
    cfg.noise_free_steps = 400;
    cfg.noise_aware_steps = 50;
    cfg.seed = 6;
    cfg.tomography.shots_per_setting = 1024;
    device::EmulatedDevice dev(device::NoiseModel::ideal());
    const auto report = train::prepare_state(circuit, target, dev, cfg);

    // Simulator fidelity stays put (within shot-noise wander) across the
    // noise-aware phase.
    double first_aware = -1.0, last_aware = -1.0;
    for (const auto& record : report.steps) {
        if (record.phase == train::Phase::noise_aware) {
            if (first_aware < 0.0) {
                first_aware = record.sim_fidelity;
            }
            last_aware = record.sim_fidelity;
        }
    }
    CHECK(first_aware >= 0.0);
    CHECK(std::abs(last_aware - first_aware) < 0.02);
}

TEST_CASE("device-call accounting") {
    const Circuit circuit = path_ansatz(3, 6);
    const StateVector target = prep::haar_state(3, 11);
    train::TrainConfig cfg;
    cfg.noise_free_steps = 20;
    cfg.noise_aware_steps = 7;
    cfg.seed = 3;
    cfg.tomography.shots_per_setting = 64;

    device::EmulatedDevice dev(device::NoiseModel::ideal());
    const auto report = train::prepare_state(circuit, target, dev, cfg);
    CHECK(dev.setting_executions() == 7 * 27);
    CHECK(report.device_setting_executions == 7 * 27);
    CHECK(report.device_shots == 7 * 27 * 64);

    train::TrainConfig sampled = cfg;
    sampled.tomography.mode = tomo::PlanMode::sampled;
    sampled.tomography.sampled_k = 5;
    device::EmulatedDevice dev2(device::NoiseModel::ideal());
    (void)train::prepare_state(circuit, target, dev2, sampled);
    CHECK(dev2.setting_executions() == 7 * 5);

    long evaluations = 0;
    const std::vector<double> theta(static_cast<std::size_t>(circuit.n_params), 0.2);
    const auto ps = train::parameter_shift_gradient(
        [&](std::span<const double>) {
            ++evaluations;
            return 0.0;
        },
        circuit, theta);
    CHECK(evaluations == 2 * circuit.n_params);
    CHECK(ps.evaluations == evaluations);
}

TEST_CASE("training determinism: identical config gives identical curves") {
    const Circuit circuit = path_ansatz(3, 4);
    const StateVector target = prep::haar_state(3, 55);
    device::NoiseModel noise;
    noise.with_uniform_coherent(0.03).with_depolarizing(0.002, 0.01);
    noise.seed = 77;
    train::TrainConfig cfg;
    cfg.noise_free_steps = 60;
    cfg.noise_aware_steps = 10;
    cfg.seed = 12;
    cfg.tomography.shots_per_setting = 128;

    device::EmulatedDevice dev_a(noise);
    device::EmulatedDevice dev_b(noise);
    const auto a = train::prepare_state(circuit, target, dev_a, cfg);
    const auto b = train::prepare_state(circuit, target, dev_b, cfg);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].loss == b.steps[i].loss);
        CHECK(a.steps[i].sim_fidelity == b.steps[i].sim_fidelity);
    }
    CHECK(a.final_params == b.final_params);
}

TEST_CASE("first-order descent under coherent-only noise (exact tomography)") {
    // One plain-SGD step on the straight-through gradient does not increase
    // the exact device loss in at least 95% of 200 trials sampled along
    // noise-free descent trajectories.
    int descents = 0;
    constexpr int kTrials = 200;
    for (int trial = 0; trial < kTrials; ++trial) {
        Rng rng(derive_seed(606, static_cast<std::uint64_t>(trial)));
        const int n = 2 + static_cast<int>(rng.uniform_int(3));
        const int n_params = 4 + static_cast<int>(rng.uniform_int(8));
        const Circuit circuit = prep::random_circuit(
            n, n_params, 4, derive_seed(707, static_cast<std::uint64_t>(trial)));
        const StateVector target =
            prep::haar_state(n, derive_seed(808, static_cast<std::uint64_t>(trial)));
        const DensityMatrix target_dm = DensityMatrix::from_pure(target);

        train::TrainConfig warm;
        warm.noise_free_steps = static_cast<long>(rng.uniform_int(61));
        warm.noise_aware_steps = 0;
        warm.seed = derive_seed(909, static_cast<std::uint64_t>(trial));
        std::vector<double> theta = train::train_noise_free(circuit, target, warm).final_params;

        device::NoiseModel noise;
        noise.with_uniform_coherent(rng.uniform(0.0, 0.05), 0.0);

        auto exact_loss = [&](std::span<const double> th) {
            const auto rho = device::true_output_state(circuit, th, noise);
            return train::state_loss(HermitianEstimate::from_density(rho), target_dm);
        };
        const auto before = exact_loss(theta);
        const auto tape = sim::forward(circuit, theta);
        const auto grad = sim::state_gradient_cotangent(tape, before.cotangent);
        const double lr = 2e-4;  // plain SGD, lr <= 1e-3
        for (std::size_t k = 0; k < theta.size(); ++k) {
            theta[k] -= lr * grad[k];
        }
        if (exact_loss(theta).loss <= before.loss + 1e-12) {
            ++descents;
        }
    }
    CHECK(descents >= 190);  // >= 95% of 200
}

TEST_CASE("evaluate_on_device metrics") {
    const Circuit circuit = path_ansatz(3, 6);
    const StateVector target = prep::haar_state(3, 42);
    train::TrainConfig cfg;
    cfg.noise_free_steps = 400;
    cfg.noise_aware_steps = 0;
    cfg.seed = 2;
    const auto trained = train::train_noise_free(circuit, target, cfg);

    // Zero-noise device, converged parameters: tomographic fidelity >= 0.98.
    device::EmulatedDevice ideal(device::NoiseModel::ideal());
    const auto plan = tomo::build_full_plan(3, 1024);
    const auto eval =
        train::evaluate_on_device(circuit, trained.final_params, target, ideal, plan);
    CHECK(eval.fidelity >= 0.98);
    CHECK(eval.shots_used == 27 * 1024);

    // Pure depolarizing: tomographic incoherent strength tracks the exact
    // oracle value within 20% relative.
    device::NoiseModel depol;
    depol.with_depolarizing(0.002, 0.01);
    depol.seed = 5;
    const auto rho = device::true_output_state(circuit, trained.final_params, depol);
    const double p_exact = incoherent_strength(DensityMatrix::from_pure(target),
                                               HermitianEstimate::from_density(rho))
                               .p;
    device::EmulatedDevice noisy(depol);
    const auto plan_big = tomo::build_full_plan(3, 8192);
    const auto eval_noisy =
        train::evaluate_on_device(circuit, trained.final_params, target, noisy, plan_big);
    CHECK(std::abs(eval_noisy.incoherent_p - p_exact) < 0.2 * p_exact);

    // Coherent-only distortion registers as a strictly positive coherent
    // error on the exact device state; an added angle offset increases it.
    device::NoiseModel coherent;
    coherent.with_uniform_coherent(0.03, 0.0);
    const auto rho_coh = device::true_output_state(circuit, trained.final_params, coherent);
    const double ce = coherent_error(DensityMatrix::from_pure(target),
                                     HermitianEstimate::from_density(rho_coh));
    CHECK(ce > 5e-4);
    device::NoiseModel offset;
    offset.with_uniform_coherent(0.03, 0.02);
    const auto rho_off = device::true_output_state(circuit, trained.final_params, offset);
    CHECK(coherent_error(DensityMatrix::from_pure(target),
                         HermitianEstimate::from_density(rho_off)) > ce);
}

TEST_CASE("unitary synthesis: identity and CNOT targets") {
    CHECK(train::unitary_loss(Eigen::Matrix4cd::Identity(), std::vector<double>(48, 0.0)) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    train::TrainConfig cfg;
    cfg.noise_free_steps = 500;
    cfg.noise_aware_steps = 0;
    cfg.seed = 0;
    const Eigen::Matrix4cd cnot = gate_unitary(GateKind::CNOT);
    const auto report = train::synthesize_unitary(cnot, cfg);
    CHECK(report.last().loss < 1e-4);

    Eigen::Matrix4cd not_unitary = Eigen::Matrix4cd::Identity();
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS(train::synthesize_unitary(not_unitary, cfg));
}

TEST_CASE("regression dataset and noise-free training") {
    CHECK_THROWS(train::regression_dataset(3));

    // Constant-zero predictor baseline: the midpoint 8x8 grid average of
    // |sin(2t)cos(phi)| lands near the continuum value 0.405.
    const auto data = train::regression_dataset(1);
    REQUIRE(data.labels.size() == 64);
    double baseline = 0.0;
    for (double label : data.labels) {
        baseline += std::abs(label);
    }
    baseline /= 64.0;
    CHECK(baseline == doctest::Approx(0.41857).epsilon(1e-3));
    CHECK(std::abs(baseline - 0.405) < 0.02);

    train::TrainConfig cfg;
    cfg.noise_free_steps = 400;
    cfg.noise_aware_steps = 0;
    cfg.seed = 4;
    const auto report = train::state_regression(1, cfg);
    CHECK(report.last().loss < 0.2);
}

TEST_CASE("report serialization round trip") {
    train::TrainReport report;
    train::StepRecord record;
    record.step = 0;
    record.phase = train::Phase::noise_free;
    record.loss = 0.5;
    record.sim_fidelity = 0.9;
    report.steps.push_back(record);
    record.step = 1;
    record.phase = train::Phase::noise_aware;
    record.dev_fidelity = 0.8;
    record.coherent_error = 0.01;
    record.incoherent_p = 0.05;
    record.cum_device_shots = 1024;
    report.steps.push_back(record);
    report.final_params = {0.1, 0.2};

    std::ostringstream csv;
    report.write_csv(csv);
    const std::string text = csv.str();
    CHECK(text.find("step,phase,loss,sim_fidelity,dev_fidelity,coherent_err,"
                    "incoherent_p,cum_device_shots") == 0);
    CHECK(text.find("noise_aware") != std::string::npos);

    const std::string json_text = report.summary_json();
    CHECK(json_text.find("\"dev_fidelity\"") != std::string::npos);
    CHECK(json_text.find("\"final_params\"") != std::string::npos);
}
