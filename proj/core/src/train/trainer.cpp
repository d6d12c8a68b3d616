#include "robustprep/train/trainer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/simulator.hpp"
#include "robustprep/train/loss.hpp"

namespace robustprep::train {

namespace {

StateLoss evaluate_loss(const Eigen::MatrixXcd& estimate, const Eigen::MatrixXcd& target,
                        LossKind kind) {
    if (kind == LossKind::frobenius_sqrt) {
        return state_loss_raw(estimate, target);
    }
    const Eigen::MatrixXcd diff = estimate - target;
    StateLoss out;
    out.loss = diff.squaredNorm();
    out.cotangent = 2.0 * diff;
    return out;
}

Eigen::MatrixXcd pure_projector(const StateVector& psi) {
    const Eigen::VectorXcd v = psi.to_eigen();
    return v * v.adjoint();
}

}  // namespace

void TrainConfig::validate() const {
    if (lr <= 0.0) {
        throw std::invalid_argument("TrainConfig: lr must be positive");
    }
    if (noise_free_steps < 0 || noise_aware_steps < 0) {
        throw std::invalid_argument("TrainConfig: step counts must be >= 0");
    }
    if (tomography.shots_per_setting < 1) {
        throw std::invalid_argument("TrainConfig: shots_per_setting must be >= 1");
    }
    if (tomography.mode == tomo::PlanMode::sampled && tomography.sampled_k < 1) {
        throw std::invalid_argument("TrainConfig: sampled mode needs sampled_k >= 1");
    }
}

std::vector<double> init_params(const Circuit& circuit, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x1a17));
    std::vector<double> theta(static_cast<std::size_t>(circuit.n_params));
    for (auto& t : theta) {
        t = rng.uniform(-0.1, 0.1);
    }
    return theta;
}

std::vector<device::MeasurementSetting> settings_for_step(const TomographyConfig& tomography,
                                                          int n_qubits, std::uint64_t seed,
                                                          long step) {
    if (tomography.mode == tomo::PlanMode::full_enumeration) {
        return tomo::build_full_plan(n_qubits, tomography.shots_per_setting).settings;
    }
    const std::uint64_t plan_seed =
        derive_seed(seed, 0xba5e5 + (tomography.resample_each_step
                                         ? static_cast<std::uint64_t>(step)
                                         : 0ULL));
    return tomo::build_sampled_plan(n_qubits, tomography.sampled_k,
                                    tomography.shots_per_setting, plan_seed)
        .settings;
}

TrainReport train_noise_free(const Circuit& circuit, const StateVector& target,
                             const TrainConfig& cfg, std::span<const double> theta0,
                             Optimizer* optimizer) {
    cfg.validate();
    circuit.validate();
    std::vector<double> theta = theta0.empty()
                                    ? init_params(circuit, cfg.seed)
                                    : std::vector<double>(theta0.begin(), theta0.end());
    if (static_cast<int>(theta.size()) != circuit.n_params) {
        throw std::invalid_argument("train_noise_free: theta0 size mismatch");
    }
    Optimizer local(cfg.optimizer, cfg.lr, theta.size());
    Optimizer& opt = optimizer != nullptr ? *optimizer : local;

    const Eigen::MatrixXcd target_dm = pure_projector(target);
    TrainReport report;
    for (long step = 0; step <= cfg.noise_free_steps; ++step) {
        const sim::ForwardTape tape = sim::forward(circuit, theta);
        const StateLoss sl = evaluate_loss(pure_projector(tape.state), target_dm, cfg.loss);
        StepRecord record;
        record.step = step;
        record.phase = Phase::noise_free;
        record.loss = sl.loss;
        record.sim_fidelity = fidelity(target, tape.state);
        report.steps.push_back(record);
        if (step == cfg.noise_free_steps) {
            break;  // final evaluation only
        }
        const std::vector<double> grad = sim::state_gradient_cotangent(tape, sl.cotangent);
        opt.step(theta, grad);
        if (cfg.record_trajectory) {
            report.trajectory.push_back(theta);
        }
    }
    report.final_params = std::move(theta);
    return report;
}

TrainReport finetune_noise_aware(const Circuit& circuit, std::span<const double> theta0,
                                 const StateVector& target, device::DeviceExecutor& dev,
                                 const TrainConfig& cfg, Optimizer* optimizer) {
    cfg.validate();
    circuit.validate();
    if (cfg.loss == LossKind::frobenius_squared) {
        // The upstream gradient of the squared loss is linear in the estimate,
        // so device noise cancels from it in expectation; reject rather than
        // silently train noise-unaware.
        throw std::invalid_argument(
            "finetune_noise_aware: squared Frobenius loss is not noise-aware capable");
    }
    if (static_cast<int>(theta0.size()) != circuit.n_params) {
        throw std::invalid_argument("finetune_noise_aware: theta0 size mismatch");
    }
    std::vector<double> theta(theta0.begin(), theta0.end());
    Optimizer local(cfg.optimizer, cfg.lr, theta.size());
    Optimizer& opt = optimizer != nullptr ? *optimizer : local;

    const DensityMatrix target_dm = DensityMatrix::from_pure(target);
    TrainReport report;
    for (long step = 0; step < cfg.noise_aware_steps; ++step) {
        const auto settings =
            settings_for_step(cfg.tomography, circuit.n_qubits, cfg.seed, step);
        const auto counts =
            dev.execute(circuit, theta, settings, cfg.tomography.shots_per_setting);
        report.device_setting_executions += settings.size();
        report.device_shots +=
            settings.size() * static_cast<std::uint64_t>(cfg.tomography.shots_per_setting);

        const HermitianEstimate estimate =
            tomo::estimate_state(counts, cfg.readout_confusion);
        const StateLoss sl = state_loss(estimate, target_dm);

        StepRecord record;
        record.step = step;
        record.phase = Phase::noise_aware;
        record.loss = sl.loss;
        record.dev_fidelity = fidelity(target, estimate);
        record.coherent_error = coherent_error(target_dm, estimate);
        record.incoherent_p = incoherent_strength(target_dm, estimate).p;
        record.cum_device_shots = report.device_shots;

        if (sl.loss < 1e-12) {
            record.sim_fidelity = fidelity(target, sim::forward(circuit, theta).state);
            report.steps.push_back(record);
            ++report.degenerate_steps;
            if (cfg.record_trajectory) {
                report.trajectory.push_back(theta);
            }
            continue;  // zero step
        }
        const sim::ForwardTape tape = sim::forward(circuit, theta);
        record.sim_fidelity = fidelity(target, tape.state);
        report.steps.push_back(record);
        const std::vector<double> grad = sim::state_gradient_cotangent(tape, sl.cotangent);
        opt.step(theta, grad);
        if (cfg.record_trajectory) {
            report.trajectory.push_back(theta);
        }
    }
    report.final_params = std::move(theta);
    return report;
}

TrainReport prepare_state(const Circuit& circuit, const StateVector& target,
                          device::DeviceExecutor& dev, const TrainConfig& cfg) {
    Optimizer optimizer(cfg.optimizer, cfg.lr,
                        static_cast<std::size_t>(circuit.n_params));
    TrainReport report = train_noise_free(circuit, target, cfg, {}, &optimizer);
    const TrainReport aware = finetune_noise_aware(circuit, report.final_params, target, dev,
                                                   cfg, &optimizer);
    report.append(aware);
    return report;
}

ParameterShiftResult parameter_shift_gradient(
    const std::function<double(std::span<const double>)>& evaluate, const Circuit& circuit,
    std::span<const double> theta) {
    circuit.validate();
    if (static_cast<int>(theta.size()) != circuit.n_params) {
        throw std::invalid_argument("parameter_shift_gradient: theta size mismatch");
    }
    constexpr double kShift = std::numbers::pi / 2.0;
    ParameterShiftResult result;
    result.gradient.resize(theta.size(), 0.0);
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted[k] = theta[k] + kShift;
        const double plus = evaluate(shifted);
        shifted[k] = theta[k] - kShift;
        const double minus = evaluate(shifted);
        shifted[k] = theta[k];
        result.gradient[k] = (plus - minus) / 2.0;
        result.evaluations += 2;
    }
    return result;
}

DeviceEvaluation evaluate_on_device(
    const Circuit& circuit, std::span<const double> theta, const StateVector& target,
    device::DeviceExecutor& dev, const tomo::TomographyPlan& plan,
    const std::optional<std::vector<Eigen::Matrix2d>>& mitigation) {
    const auto counts = dev.execute(circuit, theta, plan.settings, plan.shots_per_setting);
    const HermitianEstimate estimate = tomo::estimate_state(counts, mitigation);
    const DensityMatrix target_dm = DensityMatrix::from_pure(target);
    DeviceEvaluation eval;
    eval.fidelity = fidelity(target, estimate);
    eval.coherent_error = coherent_error(target_dm, estimate);
    const IncoherentStrength inc = incoherent_strength(target_dm, estimate);
    eval.incoherent_p = inc.p;
    eval.incoherent_clamped = inc.clamped;
    eval.shots_used = plan.settings.size() *
                      static_cast<std::uint64_t>(plan.shots_per_setting);
    return eval;
}

}  // namespace robustprep::train
