// robustprep command-line front-end: config-driven experiment runs plus a few
// direct utilities (target generation, gradient and tomography checks, and
// the optimizer/decomposition comparison sweeps).
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "robustprep/cli/run.hpp"
#include "robustprep/io/amplitude_io.hpp"
#include "robustprep/prep/targets.hpp"

namespace {

using robustprep::cli::ExperimentConfig;
using robustprep::cli::RunOverrides;

struct CommonFlags {
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--seed", flags.seed, "Root seed");
    cmd->add_option("--jobs", flags.jobs, "Worker threads for independent sub-runs");
}

// Builds a config document from flags and hands it to the runner, so the
// subcommands behave exactly like `run` with the equivalent config file.
int run_inline(const nlohmann::json& document) {
    ExperimentConfig config;
    try {
        config = robustprep::cli::parse_config(document.dump());
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return robustprep::cli::kExitConfigError;
    }
    return robustprep::cli::run_experiment(config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noise-aware variational quantum state preparation workbench"};
    app.require_subcommand(1);

    // run --config
    std::string config_path;
    RunOverrides overrides;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config");
    run_cmd->add_option("--config", config_path, "Path to the JSON config")->required();
    std::string run_out;
    std::uint64_t run_seed = 0;
    int run_jobs = 0;
    auto* out_opt = run_cmd->add_option("--out", run_out, "Override the output directory");
    auto* seed_opt = run_cmd->add_option("--seed", run_seed, "Override the root seed");
    auto* jobs_opt = run_cmd->add_option("--jobs", run_jobs, "Worker threads");

    // gen-target <kind>
    auto* gen_cmd = app.add_subcommand("gen-target", "Write a target amplitude file");
    std::string gen_kind;
    int gen_qubits = 0;
    std::uint64_t gen_seed = 0;
    double gen_mu = 0.5, gen_sigma = 0.15;
    int gen_bit = 0;
    std::string gen_out = "target_amplitudes.txt";
    gen_cmd->add_option("kind", gen_kind, "haar | sine | gaussian | qec5 | image4x4")
        ->required();
    gen_cmd->add_option("--qubits", gen_qubits, "Number of qubits")->required();
    gen_cmd->add_option("--seed", gen_seed, "Seed (haar)");
    gen_cmd->add_option("--mu", gen_mu, "Gaussian center");
    gen_cmd->add_option("--sigma", gen_sigma, "Gaussian width");
    gen_cmd->add_option("--logical-bit", gen_bit, "Logical bit (qec5)");
    gen_cmd->add_option("--out", gen_out, "Output file path");

    // grad-check
    CommonFlags grad_flags;
    int grad_qubits = 4, grad_trials = 50;
    auto* grad_cmd =
        app.add_subcommand("grad-check", "Adjoint vs. finite-difference gradient sweep");
    grad_cmd->add_option("--qubits", grad_qubits, "Qubit count for random circuits");
    grad_cmd->add_option("--trials", grad_trials, "Number of random circuits");
    add_common(grad_cmd, grad_flags);

    // tomo-check
    CommonFlags tomo_flags;
    int tomo_qubits = 3, tomo_repeats = 20, tomo_k = 0;
    std::int64_t tomo_shots = 1024;
    std::uint64_t tomo_target_seed = 7;
    auto* tomo_cmd =
        app.add_subcommand("tomo-check", "Shadow tomography bias/variance sweep");
    tomo_cmd->add_option("--qubits", tomo_qubits, "Qubit count");
    tomo_cmd->add_option("--repeats", tomo_repeats, "Independent estimates");
    tomo_cmd->add_option("--shots", tomo_shots, "Shots per setting");
    tomo_cmd->add_option("--sample-k", tomo_k, "Sampled settings per estimate (0 = full)");
    tomo_cmd->add_option("--target-seed", tomo_target_seed, "Haar target seed");
    add_common(tomo_cmd, tomo_flags);

    // compare-optimizers
    CommonFlags cmp_flags;
    int cmp_qubits = 4, cmp_blocks = 12, cmp_k = 20;
    long cmp_ps_steps = 4;
    std::int64_t cmp_shots = 256;
    long cmp_pretrain = 500;
    auto* cmp_cmd = app.add_subcommand(
        "compare-optimizers",
        "Straight-through fine-tuning vs. parameter shift vs. Nelder-Mead");
    cmp_cmd->add_option("--qubits", cmp_qubits, "Qubit count");
    cmp_cmd->add_option("--blocks", cmp_blocks, "Ansatz blocks");
    cmp_cmd->add_option("--ps-steps", cmp_ps_steps, "Parameter-shift steps (sets the budget)");
    cmp_cmd->add_option("--sample-k", cmp_k, "Sampled tomography settings per evaluation");
    cmp_cmd->add_option("--shots", cmp_shots, "Shots per setting");
    cmp_cmd->add_option("--pretrain-steps", cmp_pretrain, "Noise-free steps before comparing");
    add_common(cmp_cmd, cmp_flags);

    // compare-ad
    CommonFlags ad_flags;
    int ad_qubits = 5, ad_blocks = 20, ad_targets = 5;
    long ad_steps = 500;
    auto* ad_cmd = app.add_subcommand(
        "compare-ad", "Arithmetic decomposition vs. trained ansatz (counts and fidelity)");
    ad_cmd->add_option("--qubits", ad_qubits, "Qubit count");
    ad_cmd->add_option("--blocks", ad_blocks, "Ansatz blocks");
    ad_cmd->add_option("--targets", ad_targets, "Number of seeded Haar targets");
    ad_cmd->add_option("--steps", ad_steps, "Noise-free training steps");
    add_common(ad_cmd, ad_flags);

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        if (*out_opt) {
            overrides.output_dir = run_out;
        }
        if (*seed_opt) {
            overrides.seed = run_seed;
        }
        if (*jobs_opt) {
            overrides.jobs = run_jobs;
        }
        return robustprep::cli::run_config_file(config_path, overrides);
    }

    if (gen_cmd->parsed()) {
        try {
            robustprep::prep::TargetSpec spec;
            spec.kind = gen_kind;
            spec.n_qubits = gen_qubits;
            spec.seed = gen_seed;
            spec.mu = gen_mu;
            spec.sigma = gen_sigma;
            spec.logical_bit = gen_bit;
            robustprep::io::write_amplitudes_file(gen_out, spec.generate());
            std::cout << "wrote " << gen_out << '\n';
            return robustprep::cli::kExitOk;
        } catch (const std::exception& e) {
            std::cerr << "gen-target: " << e.what() << '\n';
            return robustprep::cli::kExitConfigError;
        }
    }

    nlohmann::json j;
    if (grad_cmd->parsed()) {
        j = {{"experiment", "grad_check"},
             {"seed", grad_flags.seed},
             {"output_dir", grad_flags.out_dir},
             {"jobs", grad_flags.jobs},
             {"grad_check_qubits", grad_qubits},
             {"grad_check_trials", grad_trials}};
        return run_inline(j);
    }
    if (tomo_cmd->parsed()) {
        j = {{"experiment", "tomo_check"},
             {"seed", tomo_flags.seed},
             {"output_dir", tomo_flags.out_dir},
             {"jobs", tomo_flags.jobs},
             {"tomo_check_repeats", tomo_repeats},
             {"target", {{"kind", "haar"}, {"n_qubits", tomo_qubits}, {"seed", tomo_target_seed}}},
             {"train",
              {{"noise_free_steps", 0},
               {"noise_aware_steps", 0},
               {"tomography",
                {{"mode", tomo_k > 0 ? "sampled" : "full"},
                 {"k", tomo_k},
                 {"shots_per_setting", tomo_shots}}}}}};
        return run_inline(j);
    }
    if (cmp_cmd->parsed()) {
        j = {{"experiment", "compare_optimizers"},
             {"seed", cmp_flags.seed},
             {"output_dir", cmp_flags.out_dir},
             {"jobs", cmp_flags.jobs},
             {"compare_ps_steps", cmp_ps_steps},
             {"ansatz", {{"n_qubits", cmp_qubits}, {"n_blocks", cmp_blocks}, {"coupling", "path"}}},
             {"noise",
              {{"coherent", {{"all", {{"epsilon", 0.05}, {"delta", 0.02}}}}},
               {"p1", 0.001},
               {"p2", 0.002},
               {"readout_flip", 0.01}}},
             {"train",
              {{"noise_free_steps", cmp_pretrain},
               {"tomography",
                {{"mode", "sampled"}, {"k", cmp_k}, {"shots_per_setting", cmp_shots}}}}}};
        return run_inline(j);
    }
    if (ad_cmd->parsed()) {
        j = {{"experiment", "compare_ad"},
             {"seed", ad_flags.seed},
             {"output_dir", ad_flags.out_dir},
             {"jobs", ad_flags.jobs},
             {"compare_targets", ad_targets},
             {"ansatz", {{"n_qubits", ad_qubits}, {"n_blocks", ad_blocks}, {"coupling", "path"}}},
             {"noise",
              {{"coherent", {{"all", {{"epsilon", 0.03}}}}},
               {"p1", 0.002},
               {"p2", 0.01},
               {"readout_flip", 0.02}}},
             {"train", {{"noise_free_steps", ad_steps}, {"noise_aware_steps", 0}}}};
        return run_inline(j);
    }
    return robustprep::cli::kExitOk;
}
