#include "robustprep/train/tasks.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robustprep/prep/ansatz.hpp"
#include "robustprep/qcore/metrics.hpp"
#include "robustprep/sim/kernels.hpp"
#include "robustprep/sim/simulator.hpp"
#include "robustprep/tomo/tomography.hpp"
#include "robustprep/train/loss.hpp"

namespace robustprep::train {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unitary(const Eigen::Matrix4cd& v) {
    if ((v.adjoint() * v - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-8) {
        throw std::invalid_argument("synthesize_unitary: target is not unitary");
    }
}

// Circuit preparing basis state |j> in front of the ansatz.
Circuit with_basis_prep(const Circuit& ansatz, std::uint64_t j) {
    Circuit prefixed = ansatz;
    std::vector<CircuitOp> prep;
    for (int q = 0; q < ansatz.n_qubits; ++q) {
        if ((j >> q) & 1ULL) {
            prep.push_back(CircuitOp::plain(GateKind::X, {q}));
        }
    }
    prefixed.ops.insert(prefixed.ops.begin(), prep.begin(), prep.end());
    return prefixed;
}

Circuit concatenate(const Circuit& prep, const Circuit& ansatz) {
    Circuit combined = ansatz;
    combined.ops.insert(combined.ops.begin(), prep.ops.begin(), prep.ops.end());
    return combined;
}

// Loss and adjoint gradient of 1 - |tr(V^dag U)|^2 / 16 from the four
// column tapes.
struct UnitaryLossGrad {
    double loss = 0.0;
    std::vector<double> gradient;
};

UnitaryLossGrad unitary_loss_grad(const Eigen::Matrix4cd& target, const Circuit& ansatz,
                                  std::span<const double> theta, bool with_gradient) {
    UnitaryLossGrad out;
    std::vector<sim::ForwardTape> tapes;
    tapes.reserve(4);
    complex_t trace{0.0, 0.0};
    for (std::uint64_t j = 0; j < 4; ++j) {
        tapes.push_back(sim::forward(with_basis_prep(ansatz, j), theta));
        const Eigen::VectorXcd u_col = tapes.back().state.to_eigen();
        const Eigen::VectorXcd v_col = target.col(static_cast<Eigen::Index>(j));
        trace += (v_col.adjoint() * u_col).value();
    }
    out.loss = 1.0 - std::norm(trace) / 16.0;
    if (!with_gradient) {
        return out;
    }
    out.gradient.assign(theta.size(), 0.0);
    for (std::uint64_t j = 0; j < 4; ++j) {
        // d loss / d theta = -(1/16) sum_j 2 Re <trace * v_j | d u_j>.
        const Eigen::VectorXcd xi = trace * target.col(static_cast<Eigen::Index>(j));
        const std::vector<double> g = sim::backward(
            tapes[j], std::span<const complex_t>(xi.data(),
                                                 static_cast<std::size_t>(xi.size())));
        for (std::size_t k = 0; k < g.size(); ++k) {
            out.gradient[k] -= g[k] / 16.0;
        }
    }
    return out;
}

double zzz_parity_expectation(const std::vector<double>& probs) {
    double value = 0.0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        value += (std::popcount(b) & 1 ? -1.0 : 1.0) * probs[b];
    }
    return value;
}

}  // namespace

Circuit synthesis_ansatz_2q() {
    Circuit circuit;
    circuit.n_qubits = 2;
    int next = 0;
    auto euler_layer = [&]() {
        for (int q = 0; q < 2; ++q) {
            circuit.ops.push_back(CircuitOp::param(GateKind::RY, {q}, next++));
            circuit.ops.push_back(CircuitOp::param(GateKind::RZ, {q}, next++));
            circuit.ops.push_back(CircuitOp::param(GateKind::RY, {q}, next++));
        }
    };
    for (int rep = 0; rep < 6; ++rep) {
        euler_layer();
        circuit.ops.push_back(CircuitOp::param(GateKind::RZX, {0, 1}, next++));
    }
    euler_layer();
    circuit.n_params = next;
    circuit.validate();
    return circuit;
}

std::vector<Circuit> synthesis_input_preps_2q() {
    // Single-qubit kets: |0>, |1>, |+>, |+i> (the +i state via H then a
    // fixed RZ(pi/2), equal up to global phase).
    std::vector<Circuit> preps;
    for (int s1 = 0; s1 < 4; ++s1) {
        for (int s0 = 0; s0 < 4; ++s0) {
            Circuit prep;
            prep.n_qubits = 2;
            prep.n_params = 0;
            const int choice[2] = {s0, s1};
            for (int q = 0; q < 2; ++q) {
                switch (choice[q]) {
                    case 0:
                        break;
                    case 1:
                        prep.ops.push_back(CircuitOp::plain(GateKind::X, {q}));
                        break;
                    case 2:
                        prep.ops.push_back(CircuitOp::plain(GateKind::H, {q}));
                        break;
                    default:
                        prep.ops.push_back(CircuitOp::plain(GateKind::H, {q}));
                        prep.ops.push_back(CircuitOp::fixed(GateKind::RZ, {q}, kPi / 2.0));
                        break;
                }
            }
            preps.push_back(std::move(prep));
        }
    }
    return preps;
}

double unitary_loss(const Eigen::Matrix4cd& target, std::span<const double> theta) {
    check_unitary(target);
    return unitary_loss_grad(target, synthesis_ansatz_2q(), theta, false).loss;
}

TrainReport synthesize_unitary(const Eigen::Matrix4cd& target, const TrainConfig& cfg,
                               device::DeviceExecutor* dev) {
    cfg.validate();
    check_unitary(target);
    const Circuit ansatz = synthesis_ansatz_2q();
    std::vector<double> theta = init_params(ansatz, cfg.seed);
    Optimizer optimizer(cfg.optimizer, cfg.lr, theta.size());

    TrainReport report;
    for (long step = 0; step <= cfg.noise_free_steps; ++step) {
        const bool final_eval = step == cfg.noise_free_steps;
        const UnitaryLossGrad lg = unitary_loss_grad(target, ansatz, theta, !final_eval);
        StepRecord record;
        record.step = step;
        record.phase = Phase::noise_free;
        record.loss = lg.loss;
        record.sim_fidelity = 1.0 - lg.loss;
        report.steps.push_back(record);
        if (final_eval) {
            break;
        }
        optimizer.step(theta, lg.gradient);
    }

    if (dev != nullptr && cfg.noise_aware_steps > 0) {
        const std::vector<Circuit> preps = synthesis_input_preps_2q();
        // Pure targets V |input_i> and the (fixed) tomography settings.
        std::vector<DensityMatrix> targets;
        std::vector<StateVector> target_states;
        for (const auto& prep : preps) {
            const StateVector input = sim::forward(prep, {}).state;
            Eigen::VectorXcd mapped = target * input.to_eigen();
            std::vector<complex_t> amps(mapped.data(), mapped.data() + mapped.size());
            target_states.push_back(StateVector::normalized(2, std::move(amps)));
            targets.push_back(DensityMatrix::from_pure(target_states.back()));
        }
        const long offset = cfg.noise_free_steps + 1;
        for (long step = 0; step < cfg.noise_aware_steps; ++step) {
            const auto settings = settings_for_step(cfg.tomography, 2, cfg.seed, step);
            double mean_loss = 0.0;
            double mean_fidelity = 0.0;
            std::vector<double> grad(theta.size(), 0.0);
            for (std::size_t i = 0; i < preps.size(); ++i) {
                const Circuit circuit = concatenate(preps[i], ansatz);
                const auto counts =
                    dev->execute(circuit, theta, settings, cfg.tomography.shots_per_setting);
                report.device_setting_executions += settings.size();
                report.device_shots += settings.size() *
                                       static_cast<std::uint64_t>(
                                           cfg.tomography.shots_per_setting);
                const HermitianEstimate estimate =
                    tomo::estimate_state(counts, cfg.readout_confusion);
                const StateLoss sl = state_loss(estimate, targets[i]);
                mean_loss += sl.loss / static_cast<double>(preps.size());
                mean_fidelity += fidelity(target_states[i], estimate) /
                                 static_cast<double>(preps.size());
                if (sl.loss < 1e-12) {
                    continue;
                }
                const sim::ForwardTape tape = sim::forward(circuit, theta);
                const std::vector<double> g =
                    sim::state_gradient_cotangent(tape, sl.cotangent);
                for (std::size_t k = 0; k < g.size(); ++k) {
                    grad[k] += g[k] / static_cast<double>(preps.size());
                }
            }
            StepRecord record;
            record.step = offset + step;
            record.phase = Phase::noise_aware;
            record.loss = mean_loss;
            record.sim_fidelity =
                1.0 - unitary_loss_grad(target, ansatz, theta, false).loss;
            record.dev_fidelity = mean_fidelity;
            record.cum_device_shots = report.device_shots;
            report.steps.push_back(record);
            optimizer.step(theta, grad);
        }
    }
    report.final_params = std::move(theta);
    return report;
}

RegressionDataset regression_dataset(int task) {
    if (task != 1 && task != 2) {
        throw std::invalid_argument("regression_dataset: task must be 1 or 2");
    }
    RegressionDataset data;
    constexpr int kGrid = 8;
    for (int i = 0; i < kGrid; ++i) {
        const double theta = (i + 0.5) * (kPi / 2.0) / kGrid;
        for (int j = 0; j < kGrid; ++j) {
            const double phi = (j + 0.5) * (2.0 * kPi) / kGrid;
            data.thetas.push_back(theta);
            data.phis.push_back(phi);
            const double envelope = std::sin(2.0 * theta);
            data.labels.push_back(task == 1 ? envelope * std::cos(phi)
                                            : envelope * std::sin(phi));
        }
    }
    return data;
}

Circuit regression_input_prep(double theta, double phi) {
    Circuit prep;
    prep.n_qubits = 3;
    prep.n_params = 0;
    prep.ops.push_back(CircuitOp::fixed(GateKind::RY, {0}, 2.0 * theta));
    prep.ops.push_back(CircuitOp::plain(GateKind::CNOT, {0, 1}));
    prep.ops.push_back(CircuitOp::plain(GateKind::CNOT, {1, 2}));
    prep.ops.push_back(CircuitOp::fixed(GateKind::RZ, {0}, phi));
    return prep;
}

Circuit regression_ansatz() {
    prep::AnsatzSpec spec;
    spec.n_qubits = 3;
    spec.coupling = prep::path_coupling(3);
    spec.n_blocks = 6;
    spec.entangler = GateKind::CNOT;
    return prep::build_ansatz(spec);
}

double regression_mae(
    int task, std::span<const double> theta,
    const std::function<double(const Circuit& circuit, std::span<const double>)>& predict) {
    const RegressionDataset data = regression_dataset(task);
    const Circuit ansatz = regression_ansatz();
    double mae = 0.0;
    for (std::size_t s = 0; s < data.labels.size(); ++s) {
        const Circuit circuit =
            concatenate(regression_input_prep(data.thetas[s], data.phis[s]), ansatz);
        mae += std::abs(predict(circuit, theta) - data.labels[s]);
    }
    return mae / static_cast<double>(data.labels.size());
}

TrainReport state_regression(int task, const TrainConfig& cfg, device::DeviceExecutor* dev) {
    cfg.validate();
    const RegressionDataset data = regression_dataset(task);
    const Circuit ansatz = regression_ansatz();
    const std::size_t n_samples = data.labels.size();
    std::vector<Circuit> circuits;
    circuits.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        circuits.push_back(
            concatenate(regression_input_prep(data.thetas[s], data.phis[s]), ansatz));
    }

    std::vector<double> theta = init_params(ansatz, cfg.seed);
    Optimizer optimizer(cfg.optimizer, cfg.lr, theta.size());
    TrainReport report;

    auto sim_step = [&](long step, bool update) {
        double mae = 0.0;
        std::vector<double> grad(theta.size(), 0.0);
        for (std::size_t s = 0; s < n_samples; ++s) {
            const sim::ForwardTape tape = sim::forward(circuits[s], theta);
            const double pred = sim::expectation(tape.state, "ZZZ");
            const double err = pred - data.labels[s];
            mae += std::abs(err) / static_cast<double>(n_samples);
            if (!update || err == 0.0) {
                continue;
            }
            std::vector<complex_t> xi(tape.state.amplitudes().begin(),
                                      tape.state.amplitudes().end());
            sim::apply_pauli_string(xi, 3, "ZZZ");
            const std::vector<double> g = sim::backward(tape, xi);
            const double sign = err > 0.0 ? 1.0 : -1.0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                grad[k] += sign * g[k] / static_cast<double>(n_samples);
            }
        }
        StepRecord record;
        record.step = step;
        record.phase = Phase::noise_free;
        record.loss = mae;
        record.sim_fidelity = 0.0;
        report.steps.push_back(record);
        if (update) {
            optimizer.step(theta, grad);
        }
    };

    for (long step = 0; step <= cfg.noise_free_steps; ++step) {
        sim_step(step, step < cfg.noise_free_steps);
    }

    if (dev != nullptr && cfg.noise_aware_steps > 0) {
        const device::MeasurementSetting z_setting{std::string(3, 'Z')};
        const long offset = cfg.noise_free_steps + 1;
        for (long step = 0; step < cfg.noise_aware_steps; ++step) {
            double mae = 0.0;
            std::vector<double> grad(theta.size(), 0.0);
            for (std::size_t s = 0; s < n_samples; ++s) {
                const auto counts = dev->execute(circuits[s], theta, {&z_setting, 1},
                                                 cfg.tomography.shots_per_setting);
                report.device_setting_executions += 1;
                report.device_shots +=
                    static_cast<std::uint64_t>(cfg.tomography.shots_per_setting);
                std::vector<double> probs(8, 0.0);
                for (const auto& [bits, count] : counts.front().histogram) {
                    probs[device::bitstring_to_index(bits)] +=
                        count / static_cast<double>(cfg.tomography.shots_per_setting);
                }
                if (cfg.readout_confusion) {
                    probs = tomo::mitigate_distribution(std::move(probs),
                                                        *cfg.readout_confusion);
                }
                const double pred = zzz_parity_expectation(probs);
                const double err = pred - data.labels[s];
                mae += std::abs(err) / static_cast<double>(n_samples);
                if (err == 0.0) {
                    continue;
                }
                // Straight-through: device error sign, simulated path gradient.
                const sim::ForwardTape tape = sim::forward(circuits[s], theta);
                std::vector<complex_t> xi(tape.state.amplitudes().begin(),
                                          tape.state.amplitudes().end());
                sim::apply_pauli_string(xi, 3, "ZZZ");
                const std::vector<double> g = sim::backward(tape, xi);
                const double sign = err > 0.0 ? 1.0 : -1.0;
                for (std::size_t k = 0; k < g.size(); ++k) {
                    grad[k] += sign * g[k] / static_cast<double>(n_samples);
                }
            }
            StepRecord record;
            record.step = offset + step;
            record.phase = Phase::noise_aware;
            record.loss = mae;
            record.sim_fidelity = 0.0;
            record.cum_device_shots = report.device_shots;
            report.steps.push_back(record);
            optimizer.step(theta, grad);
        }
    }
    report.final_params = std::move(theta);
    return report;
}

}  // namespace robustprep::train
