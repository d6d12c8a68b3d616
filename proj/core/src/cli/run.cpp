#include "robustprep/cli/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include "robustprep/io/amplitude_io.hpp"
#include "robustprep/io/matrix_io.hpp"
#include "robustprep/prep/mottonen.hpp"
#include "robustprep/prep/random_circuit.hpp"
#include "robustprep/qcore/metrics.hpp"
#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/kernels.hpp"
#include "robustprep/sim/simulator.hpp"
#include "robustprep/train/loss.hpp"
#include "robustprep/train/nelder_mead.hpp"
#include "robustprep/train/tasks.hpp"

namespace robustprep::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kToolVersion = "robustprep 0.1.0";

struct OutputDir {
    fs::path root;

    explicit OutputDir(const std::string& dir) : root(dir) { fs::create_directories(root); }

    fs::path file(const std::string& name) const { return root / name; }

    void write_text(const std::string& name, const std::string& text) const {
        std::ofstream out(file(name));
        if (!out) {
            throw std::runtime_error("cannot open output file " + (root / name).string());
        }
        out << text;
    }
};

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

void run_jobs(int n_items, int jobs, const std::function<void(int)>& work) {
    jobs = std::min(jobs, n_items);
    if (jobs <= 1) {
        for (int i = 0; i < n_items; ++i) {
            work(i);
        }
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) {
                work(i);
            }
        });
    }
    for (auto& worker : workers) {
        worker.join();
    }
}

bool has_nan(const train::TrainReport& report) {
    for (const auto& step : report.steps) {
        if (!std::isfinite(step.loss)) {
            return true;
        }
    }
    return false;
}

// The four standard task states for comparison experiments.
std::vector<std::pair<std::string, StateVector>> task_states(int n_qubits,
                                                             std::uint64_t seed) {
    std::vector<std::pair<std::string, StateVector>> tasks;
    tasks.emplace_back("haar", prep::haar_state(n_qubits, derive_seed(seed, 11)));
    tasks.emplace_back("sine", prep::sine_state(n_qubits));
    tasks.emplace_back("gaussian", prep::gaussian_state(n_qubits));
    if (n_qubits == 4) {
        tasks.emplace_back("image", prep::amplitude_state(4, prep::synthetic_image_4x4()));
    } else if (n_qubits == 5) {
        tasks.emplace_back("qec5", prep::qec5_codeword(0));
    } else {
        tasks.emplace_back("haar2", prep::haar_state(n_qubits, derive_seed(seed, 12)));
    }
    return tasks;
}

double oracle_device_fidelity(const Circuit& circuit, std::span<const double> theta,
                              const StateVector& target, const device::NoiseModel& noise) {
    return fidelity(target, device::true_output_state(circuit, theta, noise));
}

Eigen::Matrix4cd haar_unitary_4x4(std::uint64_t seed) {
    Rng rng(seed);
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            g(r, c) = complex_t{rng.normal(), rng.normal()};
        }
    }
    const Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    Eigen::Matrix4cd q = qr.householderQ();
    const Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 4; ++c) {
        const complex_t diag = r(c, c);
        q.col(c) *= diag / std::abs(diag);
    }
    return q;
}

// ---- prepare / finetune ------------------------------------------------

int run_prepare(const ExperimentConfig& config, const OutputDir& out) {
    const StateVector target = config.target.generate();
    const Circuit circuit = prep::build_ansatz(config.ansatz);
    device::EmulatedDevice dev(config.noise);

    const train::TrainReport report =
        config.train.noise_aware_steps > 0
            ? train::prepare_state(circuit, target, dev, config.train)
            : train::train_noise_free(circuit, target, config.train);
    if (has_nan(report)) {
        std::cerr << "prepare: NaN loss encountered\n";
        return kExitNumericalError;
    }

    std::ostringstream csv;
    report.write_csv(csv);
    out.write_text("report.csv", csv.str());
    io::write_amplitudes_file(out.file("target_amplitudes.txt").string(), target);
    const StateVector final_state = sim::forward(circuit, report.final_params).state;
    io::write_amplitudes_file(out.file("final_state_amplitudes.txt").string(), final_state);

    json summary = json::parse(report.summary_json());
    summary["experiment"] = std::string(experiment_name(config.kind));
    summary["sim_fidelity"] = fidelity(target, final_state);
    summary["two_qubit_gates"] = prep::two_qubit_gate_count(circuit);

    if (config.kind == ExperimentKind::finetune && config.train.noise_aware_steps > 0) {
        // Before/after device metrics for the noise-unaware parameters versus
        // the fine-tuned ones (exact device state, no extra sampling noise).
        train::TrainConfig nf_cfg = config.train;
        nf_cfg.noise_aware_steps = 0;
        const train::TrainReport unaware =
            train::train_noise_free(circuit, target, nf_cfg);
        const DensityMatrix target_dm = DensityMatrix::from_pure(target);
        auto metrics_at = [&](std::span<const double> theta) {
            const DensityMatrix rho = device::true_output_state(circuit, theta, config.noise);
            const HermitianEstimate est = HermitianEstimate::from_density(rho);
            return json{{"fidelity", fidelity(target, rho)},
                        {"coherent_error", coherent_error(target_dm, est)},
                        {"incoherent_p", incoherent_strength(target_dm, est).p}};
        };
        summary["device_before"] = metrics_at(unaware.final_params);
        summary["device_after"] = metrics_at(report.final_params);
    }
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

// ---- grad_check ----------------------------------------------------------

int run_grad_check(const ExperimentConfig& config, const OutputDir& out) {
    std::ostringstream csv;
    csv << "trial,n_params,max_rel_error\n";
    double worst = 0.0;
    for (int trial = 0; trial < config.grad_check_trials; ++trial) {
        const std::uint64_t seed = derive_seed(config.seed, 500 + trial);
        Rng rng(seed);
        const int n_params = 4 + static_cast<int>(rng.uniform_int(21));
        const Circuit circuit = prep::random_circuit(config.grad_check_qubits, n_params,
                                                     n_params / 2, derive_seed(seed, 1));
        std::vector<double> theta(static_cast<std::size_t>(n_params));
        for (auto& t : theta) {
            t = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
        std::vector<complex_t> xi(dim_for_qubits(config.grad_check_qubits));
        for (auto& x : xi) {
            x = complex_t{rng.normal(), rng.normal()};
        }
        const sim::ForwardTape tape = sim::forward(circuit, theta);
        const std::vector<double> adjoint = sim::backward(tape, xi);

        auto value = [&](std::span<const double> t) {
            const StateVector psi = sim::forward(circuit, t).state;
            return 2.0 * sim::inner_product(xi, psi.amplitudes()).real();
        };
        double max_rel = 0.0;
        constexpr double kStep = 1e-5;
        std::vector<double> shifted(theta);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            shifted[k] = theta[k] + kStep;
            const double plus = value(shifted);
            shifted[k] = theta[k] - kStep;
            const double minus = value(shifted);
            shifted[k] = theta[k];
            const double fd = (plus - minus) / (2.0 * kStep);
            const double scale = std::max({std::abs(fd), std::abs(adjoint[k]), 1e-3});
            max_rel = std::max(max_rel, std::abs(fd - adjoint[k]) / scale);
        }
        worst = std::max(worst, max_rel);
        csv << trial << ',' << n_params << ',' << max_rel << '\n';
    }
    out.write_text("grad_check.csv", csv.str());
    std::cout << "grad-check max relative error: " << worst << '\n';
    json summary = {{"experiment", "grad_check"},
                    {"trials", config.grad_check_trials},
                    {"qubits", config.grad_check_qubits},
                    {"max_rel_error", worst}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    return std::isfinite(worst) ? kExitOk : kExitNumericalError;
}

// ---- tomo_check ----------------------------------------------------------

int run_tomo_check(const ExperimentConfig& config, const OutputDir& out) {
    const StateVector target = config.target.generate();
    const Circuit circuit = prep::mottonen_decompose(target);
    const int n = target.n_qubits();
    const Eigen::MatrixXcd true_state =
        device::true_output_state(circuit, {}, config.noise).entries();

    std::ostringstream csv;
    csv << "repeat,settings,shots,fidelity,trace_distance\n";
    std::vector<double> fidelities;
    for (int repeat = 0; repeat < config.tomo_check_repeats; ++repeat) {
        device::NoiseModel noise = config.noise;
        noise.seed = derive_seed(config.noise.seed, static_cast<std::uint64_t>(repeat));
        const auto& tomo_cfg = config.train.tomography;
        const tomo::TomographyPlan plan =
            tomo_cfg.mode == tomo::PlanMode::full_enumeration
                ? tomo::build_full_plan(n, tomo_cfg.shots_per_setting)
                : tomo::build_sampled_plan(n, tomo_cfg.sampled_k, tomo_cfg.shots_per_setting,
                                           derive_seed(config.seed, 900 + repeat));
        const auto counts =
            device::execute(circuit, {}, plan.settings, plan.shots_per_setting, noise);
        const HermitianEstimate estimate =
            tomo::estimate_state(counts, config.train.readout_confusion);
        const double fid = fidelity(target, estimate);
        fidelities.push_back(fid);
        csv << repeat << ',' << plan.settings.size() << ',' << plan.shots_per_setting << ','
            << fid << ',' << trace_distance(estimate.entries(), true_state) << '\n';
        if (repeat == 0) {
            io::write_matrix_file(out.file("estimate_0.txt").string(), estimate.entries());
        }
    }
    out.write_text("tomo_check.csv", csv.str());
    double mean = 0.0;
    for (double f : fidelities) {
        mean += f;
    }
    mean /= static_cast<double>(fidelities.size());
    double var = 0.0;
    for (double f : fidelities) {
        var += (f - mean) * (f - mean);
    }
    var /= std::max<std::size_t>(1, fidelities.size() - 1);
    json summary = {{"experiment", "tomo_check"},
                    {"repeats", config.tomo_check_repeats},
                    {"mean_fidelity", mean},
                    {"std_fidelity", std::sqrt(var)}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

// ---- compare_ad ----------------------------------------------------------

int run_compare_ad(const ExperimentConfig& config, const OutputDir& out) {
    const int n = config.ansatz.n_qubits;
    struct Row {
        int target_index;
        std::string method;
        int two_qubit_gates;
        double sim_fidelity;
        double device_fidelity;
    };
    std::vector<Row> rows(static_cast<std::size_t>(config.compare_targets) * 2);

    std::atomic<bool> nan_seen{false};
    run_jobs(config.compare_targets, effective_jobs(config.jobs), [&](int i) {
        const StateVector target =
            prep::haar_state(n, derive_seed(config.seed, 100 + static_cast<std::uint64_t>(i)));

        const Circuit mottonen = prep::mottonen_decompose(target);
        const StateVector mottonen_state = sim::forward(mottonen, {}).state;
        rows[static_cast<std::size_t>(2 * i)] =
            Row{i, "mottonen", prep::two_qubit_gate_count(mottonen),
                fidelity(target, mottonen_state),
                oracle_device_fidelity(mottonen, {}, target, config.noise)};

        train::TrainConfig cfg = config.train;
        cfg.noise_aware_steps = 0;
        cfg.seed = derive_seed(config.seed, 200 + static_cast<std::uint64_t>(i));
        const Circuit ansatz = prep::build_ansatz(config.ansatz);
        const train::TrainReport report = train::train_noise_free(ansatz, target, cfg);
        if (has_nan(report)) {
            nan_seen = true;
            return;
        }
        rows[static_cast<std::size_t>(2 * i + 1)] =
            Row{i, "ansatz", prep::two_qubit_gate_count(ansatz), report.last().sim_fidelity,
                oracle_device_fidelity(ansatz, report.final_params, target, config.noise)};
    });
    if (nan_seen) {
        std::cerr << "compare_ad: NaN loss encountered\n";
        return kExitNumericalError;
    }

    std::ostringstream csv;
    csv << "target_index,method,two_qubit_gates,sim_fidelity,device_fidelity\n";
    csv << std::setprecision(17);
    for (const auto& row : rows) {
        csv << row.target_index << ',' << row.method << ',' << row.two_qubit_gates << ','
            << row.sim_fidelity << ',' << row.device_fidelity << '\n';
    }
    out.write_text("compare_ad.csv", csv.str());

    int ansatz_wins = 0;
    double mottonen_count_mean = 0.0;
    int ansatz_count = 0;
    for (int i = 0; i < config.compare_targets; ++i) {
        const auto& m = rows[static_cast<std::size_t>(2 * i)];
        const auto& a = rows[static_cast<std::size_t>(2 * i + 1)];
        if (a.device_fidelity > m.device_fidelity) {
            ++ansatz_wins;
        }
        mottonen_count_mean += m.two_qubit_gates;
        ansatz_count = a.two_qubit_gates;
    }
    mottonen_count_mean /= std::max(1, config.compare_targets);
    json summary = {{"experiment", "compare_ad"},
                    {"targets", config.compare_targets},
                    {"ansatz_two_qubit_gates", ansatz_count},
                    {"mottonen_two_qubit_gates_mean", mottonen_count_mean},
                    {"ansatz_device_wins", ansatz_wins}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

// ---- compare_optimizers ----------------------------------------------------

struct CurvePoint {
    long evaluations;
    std::uint64_t cum_shots;
    double fidelity;
};

int run_compare_optimizers(const ExperimentConfig& config, const OutputDir& out) {
    const int n = config.ansatz.n_qubits;
    const Circuit ansatz = prep::build_ansatz(config.ansatz);
    const auto tasks = task_states(n, config.seed);
    const auto& tomo_cfg = config.train.tomography;
    const std::uint64_t shots_per_eval =
        static_cast<std::uint64_t>(tomo_cfg.mode == tomo::PlanMode::full_enumeration
                                       ? tomo::build_full_plan(n, 1).settings.size()
                                       : static_cast<std::size_t>(tomo_cfg.sampled_k)) *
        static_cast<std::uint64_t>(tomo_cfg.shots_per_setting);
    const long budget_evals = config.compare_ps_steps * 2 * ansatz.n_params;

    struct TaskResult {
        std::vector<std::tuple<std::string, CurvePoint>> rows;
        bool nan = false;
    };
    std::vector<TaskResult> results(tasks.size());

    run_jobs(static_cast<int>(tasks.size()), effective_jobs(config.jobs), [&](int task_idx) {
        const auto& [task_name, target] = tasks[static_cast<std::size_t>(task_idx)];
        TaskResult& result = results[static_cast<std::size_t>(task_idx)];
        const std::uint64_t task_seed =
            derive_seed(config.seed, 300 + static_cast<std::uint64_t>(task_idx));

        // Shared noise-free pre-training.
        train::TrainConfig nf_cfg = config.train;
        nf_cfg.noise_aware_steps = 0;
        nf_cfg.seed = task_seed;
        const train::TrainReport pretrain = train::train_noise_free(ansatz, target, nf_cfg);
        if (has_nan(pretrain)) {
            result.nan = true;
            return;
        }
        const std::vector<double>& theta0 = pretrain.final_params;
        const DensityMatrix target_dm = DensityMatrix::from_pure(target);

        auto oracle_fid = [&](std::span<const double> theta) {
            return oracle_device_fidelity(ansatz, theta, target, config.noise);
        };
        auto push = [&](const std::string& method, long evals, double fid) {
            result.rows.emplace_back(
                method, CurvePoint{evals, evals * shots_per_eval, fid});
        };

        // Tomographic loss at given parameters; one evaluation = one pass over
        // the step's settings.
        long eval_counter = 0;
        device::EmulatedDevice dev(config.noise);
        auto tomographic_loss = [&](std::span<const double> theta) {
            const auto settings = train::settings_for_step(
                tomo_cfg, n, derive_seed(task_seed, 7), eval_counter);
            const auto counts =
                dev.execute(ansatz, theta, settings, tomo_cfg.shots_per_setting);
            ++eval_counter;
            const HermitianEstimate est =
                tomo::estimate_state(counts, config.train.readout_confusion);
            return train::state_loss(est, target_dm).loss;
        };

        // Noise-aware straight-through fine-tuning: 1 evaluation per step.
        {
            train::TrainConfig rs_cfg = config.train;
            rs_cfg.noise_aware_steps = budget_evals;
            rs_cfg.seed = task_seed;
            rs_cfg.record_trajectory = true;
            device::EmulatedDevice rs_dev(config.noise);
            const train::TrainReport rs = train::finetune_noise_aware(
                ansatz, theta0, target, rs_dev, rs_cfg);
            if (has_nan(rs)) {
                result.nan = true;
                return;
            }
            push("robust", 0, oracle_fid(theta0));
            const long stride = std::max<long>(1, budget_evals / 32);
            for (long s = 0; s < static_cast<long>(rs.trajectory.size()); ++s) {
                if ((s + 1) % stride == 0 || s + 1 == static_cast<long>(rs.trajectory.size())) {
                    push("robust", s + 1, oracle_fid(rs.trajectory[static_cast<std::size_t>(s)]));
                }
            }
        }

        // Parameter-shift descent on the tomographic loss.
        {
            std::vector<double> theta(theta0);
            train::Optimizer opt(config.train.optimizer, config.train.lr, theta.size());
            push("parameter_shift", 0, oracle_fid(theta));
            long evals_used = 0;
            for (long step = 0; step < config.compare_ps_steps; ++step) {
                const auto ps =
                    train::parameter_shift_gradient(tomographic_loss, ansatz, theta);
                evals_used += ps.evaluations;
                opt.step(theta, ps.gradient);
                push("parameter_shift", evals_used, oracle_fid(theta));
            }
        }

        // Nelder-Mead on the tomographic loss; curve from best-so-far log.
        {
            std::vector<std::pair<std::vector<double>, double>> log;
            auto logged_loss = [&](const std::vector<double>& theta) {
                const double loss = tomographic_loss(theta);
                log.emplace_back(theta, loss);
                return loss;
            };
            (void)train::nelder_mead_optimize(logged_loss, theta0, budget_evals);
            push("nelder_mead", 0, oracle_fid(theta0));
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_idx = 0;
            const long stride = std::max<long>(1, static_cast<long>(log.size()) / 16);
            for (std::size_t e = 0; e < log.size(); ++e) {
                if (log[e].second < best) {
                    best = log[e].second;
                    best_idx = e;
                }
                if ((e + 1) % static_cast<std::size_t>(stride) == 0 || e + 1 == log.size()) {
                    push("nelder_mead", static_cast<long>(e + 1),
                         oracle_fid(log[best_idx].first));
                }
            }
        }
    });

    for (const auto& result : results) {
        if (result.nan) {
            std::cerr << "compare_optimizers: NaN loss encountered\n";
            return kExitNumericalError;
        }
    }

    std::ostringstream csv;
    csv << "task,method,evaluations,cum_shots,fidelity\n";
    csv << std::setprecision(17);
    json summary_tasks = json::array();
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        json final_fids = json::object();
        for (const auto& [method, point] : results[t].rows) {
            csv << tasks[t].first << ',' << method << ',' << point.evaluations << ','
                << point.cum_shots << ',' << point.fidelity << '\n';
            final_fids[method] = point.fidelity;  // last row per method wins
        }
        summary_tasks.push_back({{"task", tasks[t].first}, {"final_fidelity", final_fids}});
    }
    out.write_text("compare_optimizers.csv", csv.str());
    json summary = {{"experiment", "compare_optimizers"},
                    {"budget_evaluations", budget_evals},
                    {"shots_per_evaluation", shots_per_eval},
                    {"tasks", summary_tasks}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

// ---- synth / regress -------------------------------------------------------

int run_synth(const ExperimentConfig& config, const OutputDir& out) {
    const Eigen::Matrix4cd target =
        config.synth_target == "cnot"
            ? Eigen::Matrix4cd(gate_unitary(GateKind::CNOT))
            : haar_unitary_4x4(derive_seed(config.seed, 4242));
    device::EmulatedDevice dev(config.noise);
    train::TrainConfig cfg = config.train;
    cfg.seed = derive_seed(config.seed, 43);
    const train::TrainReport report = train::synthesize_unitary(
        target, cfg, cfg.noise_aware_steps > 0 ? &dev : nullptr);
    if (has_nan(report)) {
        std::cerr << "synth: NaN loss encountered\n";
        return kExitNumericalError;
    }
    std::ostringstream csv;
    report.write_csv(csv);
    out.write_text("report.csv", csv.str());
    json summary = json::parse(report.summary_json());
    summary["experiment"] = "synth";
    summary["target"] = config.synth_target;
    summary["noiseless_loss"] = train::unitary_loss(target, report.final_params);
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

int run_regress(const ExperimentConfig& config, const OutputDir& out) {
    device::EmulatedDevice dev(config.noise);
    train::TrainConfig cfg = config.train;
    cfg.seed = derive_seed(config.seed, 44);
    const train::TrainReport report = train::state_regression(
        config.regression_task, cfg, cfg.noise_aware_steps > 0 ? &dev : nullptr);
    if (has_nan(report)) {
        std::cerr << "regress: NaN loss encountered\n";
        return kExitNumericalError;
    }
    std::ostringstream csv;
    report.write_csv(csv);
    out.write_text("report.csv", csv.str());
    json summary = json::parse(report.summary_json());
    summary["experiment"] = "regress";
    summary["task"] = config.regression_task;
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int effective_jobs(int requested) {
    int cap = requested;
    if (const char* env = std::getenv("ROBUSTPREP_THREADS")) {
        const int env_cap = std::atoi(env);
        if (env_cap >= 1) {
            cap = std::min(cap, env_cap);
        }
    }
    return std::max(1, cap);
}

int run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const OutputDir out(config.output_dir);
    int code = kExitOk;
    try {
        switch (config.kind) {
            case ExperimentKind::prepare:
            case ExperimentKind::finetune:
                code = run_prepare(config, out);
                break;
            case ExperimentKind::grad_check:
                code = run_grad_check(config, out);
                break;
            case ExperimentKind::tomo_check:
                code = run_tomo_check(config, out);
                break;
            case ExperimentKind::compare_ad:
                code = run_compare_ad(config, out);
                break;
            case ExperimentKind::compare_optimizers:
                code = run_compare_optimizers(config, out);
                break;
            case ExperimentKind::synth:
                code = run_synth(config, out);
                break;
            case ExperimentKind::regress:
                code = run_regress(config, out);
                break;
        }
    } catch (const std::exception& e) {
        std::cerr << experiment_name(config.kind) << ": " << e.what() << '\n';
        return kExitNumericalError;
    }
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["config"] = json::parse(config_to_json(config));
    manifest["wall_time_seconds"] = elapsed;
    manifest["exit_code"] = code;
    out.write_text("run_manifest.json", manifest.dump(2) + "\n");
    return code;
}

int run_config_file(const std::string& path, const RunOverrides& overrides) {
    ExperimentConfig config;
    try {
        config = load_config_file(path);
        if (overrides.output_dir) {
            config.output_dir = *overrides.output_dir;
        }
        if (overrides.seed) {
            // Re-parse with the overridden root seed so every derived
            // sub-seed fans out from it.
            std::ifstream in(path);
            std::stringstream buffer;
            buffer << in.rdbuf();
            nlohmann::json j = nlohmann::json::parse(buffer.str());
            j["seed"] = *overrides.seed;
            config = parse_config(j.dump());
            if (overrides.output_dir) {
                config.output_dir = *overrides.output_dir;
            }
        }
        if (overrides.jobs) {
            config.jobs = std::max(1, *overrides.jobs);
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return run_experiment(config);
}

}  // namespace robustprep::cli
