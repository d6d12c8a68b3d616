#include "robustprep/cli/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "robustprep/qcore/rng.hpp"

namespace robustprep::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("config: " + message);
}

ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind kind :
         {ExperimentKind::prepare, ExperimentKind::finetune, ExperimentKind::compare_optimizers,
          ExperimentKind::compare_ad, ExperimentKind::grad_check, ExperimentKind::tomo_check,
          ExperimentKind::synth, ExperimentKind::regress}) {
        if (experiment_name(kind) == name) {
            return kind;
        }
    }
    fail("unknown experiment '" + name + "'");
}

prep::TargetSpec parse_target(const json& j) {
    prep::TargetSpec target;
    target.kind = j.value("kind", "haar");
    target.n_qubits = j.value("n_qubits", 0);
    target.seed = j.value("seed", std::uint64_t{0});
    target.mu = j.value("mu", 0.5);
    target.sigma = j.value("sigma", 0.15);
    target.logical_bit = j.value("logical_bit", 0);
    if (j.contains("values")) {
        target.values = j.at("values").get<std::vector<double>>();
    }
    return target;
}

prep::CouplingMap parse_coupling(const json& j, int n_qubits) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "path") {
            return prep::path_coupling(n_qubits);
        }
        if (name == "t") {
            return prep::t_coupling(n_qubits);
        }
        if (name == "ring") {
            return prep::ring_coupling(n_qubits);
        }
        fail("unknown coupling '" + name + "' (use path, t, ring, or an edge list)");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& edge : j) {
        if (!edge.is_array() || edge.size() != 2) {
            fail("coupling edges must be [a, b] pairs");
        }
        edges.emplace_back(edge[0].get<int>(), edge[1].get<int>());
    }
    return prep::normalized_coupling(n_qubits, std::move(edges));
}

prep::AnsatzSpec parse_ansatz(const json& j) {
    prep::AnsatzSpec spec;
    spec.n_qubits = j.value("n_qubits", 0);
    spec.n_blocks = j.value("n_blocks", 1);
    const std::string entangler = j.value("entangler", "cnot");
    if (entangler == "cnot") {
        spec.entangler = GateKind::CNOT;
    } else if (entangler == "rzx") {
        spec.entangler = GateKind::RZX;
    } else {
        fail("entangler must be cnot or rzx");
    }
    spec.coupling = j.contains("coupling") ? parse_coupling(j.at("coupling"), spec.n_qubits)
                                           : prep::path_coupling(spec.n_qubits);
    spec.validate();
    return spec;
}

device::NoiseModel parse_noise(const json& j) {
    device::NoiseModel noise;
    noise.p1 = j.value("p1", 0.0);
    noise.p2 = j.value("p2", 0.0);
    noise.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("coherent")) {
        for (const auto& [name, value] : j.at("coherent").items()) {
            const double epsilon = value.value("epsilon", 0.0);
            const double delta = value.value("delta", 0.0);
            if (name == "all") {
                noise.with_uniform_coherent(epsilon, delta);
                continue;
            }
            const auto kind = gate_from_name(name);
            if (!kind) {
                fail("unknown gate kind '" + name + "' in coherent noise");
            }
            noise.with_coherent(*kind, epsilon, delta);
        }
    }
    if (j.contains("readout_flip")) {
        // Expanded to per-qubit matrices once the qubit count is known.
        const double flip = j.at("readout_flip").get<double>();
        if (flip < 0.0 || flip > 1.0) {
            fail("readout_flip must lie in [0, 1]");
        }
        noise.readout.assign(1, device::symmetric_confusion(flip));  // sentinel, see resize
    }
    if (j.contains("readout")) {
        noise.readout.clear();
        for (const auto& matrix : j.at("readout")) {
            if (!matrix.is_array() || matrix.size() != 2) {
                fail("readout matrices must be 2x2 row arrays");
            }
            Eigen::Matrix2d a;
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    a(r, c) = matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
                                  .get<double>();
                }
            }
            noise.readout.push_back(a);
        }
    }
    return noise;
}

train::TrainConfig parse_train(const json& j) {
    train::TrainConfig cfg;
    cfg.lr = j.value("lr", 5e-3);
    cfg.noise_free_steps = j.value("noise_free_steps", 500L);
    cfg.noise_aware_steps = j.value("noise_aware_steps", 50L);
    if (j.contains("optimizer")) {
        const auto& opt = j.at("optimizer");
        if (opt.is_string()) {
            const std::string name = opt.get<std::string>();
            if (name == "adam") {
                cfg.optimizer = train::AdamConfig{};
            } else if (name == "sgd") {
                cfg.optimizer = train::SgdConfig{};
            } else {
                fail("optimizer must be adam or sgd");
            }
        } else if (opt.contains("adam")) {
            train::AdamConfig adam;
            adam.beta1 = opt.at("adam").value("beta1", 0.9);
            adam.beta2 = opt.at("adam").value("beta2", 0.999);
            adam.epsilon = opt.at("adam").value("epsilon", 1e-8);
            cfg.optimizer = adam;
        } else {
            fail("optimizer must be adam, sgd, or {\"adam\": {...}}");
        }
    }
    if (j.contains("tomography")) {
        const auto& tomo_j = j.at("tomography");
        const std::string mode = tomo_j.value("mode", "full");
        if (mode == "full") {
            cfg.tomography.mode = tomo::PlanMode::full_enumeration;
        } else if (mode == "sampled") {
            cfg.tomography.mode = tomo::PlanMode::sampled;
        } else {
            fail("tomography mode must be full or sampled");
        }
        cfg.tomography.sampled_k = tomo_j.value("k", 0);
        cfg.tomography.shots_per_setting = tomo_j.value("shots_per_setting", 1024L);
        cfg.tomography.resample_each_step = tomo_j.value("resample_each_step", true);
    }
    const std::string loss = j.value("loss", "frobenius_sqrt");
    if (loss == "frobenius_sqrt") {
        cfg.loss = train::LossKind::frobenius_sqrt;
    } else if (loss == "frobenius_squared") {
        cfg.loss = train::LossKind::frobenius_squared;
    } else {
        fail("loss must be frobenius_sqrt or frobenius_squared");
    }
    return cfg;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::prepare:
            return "prepare";
        case ExperimentKind::finetune:
            return "finetune";
        case ExperimentKind::compare_optimizers:
            return "compare_optimizers";
        case ExperimentKind::compare_ad:
            return "compare_ad";
        case ExperimentKind::grad_check:
            return "grad_check";
        case ExperimentKind::tomo_check:
            return "tomo_check";
        case ExperimentKind::synth:
            return "synth";
        case ExperimentKind::regress:
            return "regress";
    }
    return "unknown";
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        fail("top level must be an object");
    }
    ExperimentConfig config;
    config.version = j.value("version", 1);
    if (config.version != 1) {
        fail("unsupported config version");
    }
    if (!j.contains("experiment")) {
        fail("missing 'experiment'");
    }
    config.kind = kind_from_name(j.at("experiment").get<std::string>());
    config.seed = j.value("seed", std::uint64_t{0});
    config.output_dir = j.value("output_dir", "out");
    config.mitigation = j.value("mitigation", true);
    config.jobs = j.value("jobs", 1);
    if (config.jobs < 1) {
        fail("jobs must be >= 1");
    }

    if (j.contains("target")) {
        config.target = parse_target(j.at("target"));
    }
    if (j.contains("ansatz")) {
        config.ansatz = parse_ansatz(j.at("ansatz"));
    }
    if (j.contains("noise")) {
        config.noise = parse_noise(j.at("noise"));
    }
    if (j.contains("train")) {
        config.train = parse_train(j.at("train"));
    }
    config.grad_check_qubits = j.value("grad_check_qubits", 4);
    config.grad_check_trials = j.value("grad_check_trials", 50);
    config.tomo_check_repeats = j.value("tomo_check_repeats", 20);
    config.compare_ps_steps = j.value("compare_ps_steps", 4L);
    config.compare_targets = j.value("compare_targets", 5);
    config.synth_target = j.value("synth_target", "random");
    config.regression_task = j.value("regression_task", 1);

    // Sub-seeds fan out from the root seed unless explicitly pinned.
    if (!j.contains("noise") || !j.at("noise").contains("seed")) {
        config.noise.seed = derive_seed(config.seed, 1);
    }
    if (!j.contains("target") || !j.at("target").contains("seed")) {
        config.target.seed = derive_seed(config.seed, 2);
    }
    config.train.seed = derive_seed(config.seed, 3);

    // Late validation that needs cross-field context. The synthesis and
    // regression experiments have fixed circuit widths.
    int n_qubits = config.ansatz.n_qubits > 0 ? config.ansatz.n_qubits
                                              : config.target.n_qubits;
    if (config.kind == ExperimentKind::synth) {
        n_qubits = 2;
    } else if (config.kind == ExperimentKind::regress) {
        n_qubits = 3;
    }
    if (config.noise.readout.size() == 1 && n_qubits > 1) {
        config.noise.readout.assign(static_cast<std::size_t>(n_qubits),
                                    config.noise.readout.front());
    }
    try {
        if (n_qubits > 0) {
            config.noise.validate(n_qubits);
        }
        config.train.validate();
        if (config.regression_task != 1 && config.regression_task != 2) {
            fail("regression_task must be 1 or 2");
        }
        if (config.synth_target != "random" && config.synth_target != "cnot") {
            fail("synth_target must be random or cnot");
        }
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    if (config.train.tomography.mode == tomo::PlanMode::sampled &&
        config.train.tomography.sampled_k < 1) {
        fail("sampled tomography requires k >= 1");
    }
    config.train.readout_confusion =
        (config.mitigation && !config.noise.readout.empty())
            ? std::optional<std::vector<Eigen::Matrix2d>>(config.noise.readout)
            : std::nullopt;
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config, int indent) {
    json j;
    j["version"] = config.version;
    j["experiment"] = std::string(experiment_name(config.kind));
    j["seed"] = config.seed;
    j["output_dir"] = config.output_dir;
    j["mitigation"] = config.mitigation;
    j["jobs"] = config.jobs;
    j["target"] = {{"kind", config.target.kind},
                   {"n_qubits", config.target.n_qubits},
                   {"seed", config.target.seed},
                   {"mu", config.target.mu},
                   {"sigma", config.target.sigma},
                   {"logical_bit", config.target.logical_bit}};
    if (!config.target.values.empty()) {
        j["target"]["values"] = config.target.values;
    }
    if (config.ansatz.n_qubits > 0) {
        json edges = json::array();
        for (const auto& [a, b] : config.ansatz.coupling.edges) {
            edges.push_back({a, b});
        }
        j["ansatz"] = {{"n_qubits", config.ansatz.n_qubits},
                       {"n_blocks", config.ansatz.n_blocks},
                       {"entangler", config.ansatz.entangler == GateKind::CNOT ? "cnot" : "rzx"},
                       {"coupling", edges}};
    }
    json coherent = json::object();
    for (const auto& [kind, gn] : config.noise.coherent) {
        coherent[std::string(gate_name(kind))] = {{"epsilon", gn.epsilon},
                                                  {"delta", gn.delta}};
    }
    json readout = json::array();
    for (const auto& a : config.noise.readout) {
        readout.push_back({{a(0, 0), a(0, 1)}, {a(1, 0), a(1, 1)}});
    }
    j["noise"] = {{"coherent", coherent},
                  {"p1", config.noise.p1},
                  {"p2", config.noise.p2},
                  {"readout", readout},
                  {"seed", config.noise.seed}};
    j["train"] = {
        {"lr", config.train.lr},
        {"noise_free_steps", config.train.noise_free_steps},
        {"noise_aware_steps", config.train.noise_aware_steps},
        {"optimizer",
         std::holds_alternative<train::AdamConfig>(config.train.optimizer) ? "adam" : "sgd"},
        {"loss",
         config.train.loss == train::LossKind::frobenius_sqrt ? "frobenius_sqrt"
                                                              : "frobenius_squared"},
        {"tomography",
         {{"mode", config.train.tomography.mode == tomo::PlanMode::full_enumeration
                       ? "full"
                       : "sampled"},
          {"k", config.train.tomography.sampled_k},
          {"shots_per_setting", config.train.tomography.shots_per_setting},
          {"resample_each_step", config.train.tomography.resample_each_step}}}};
    j["grad_check_qubits"] = config.grad_check_qubits;
    j["grad_check_trials"] = config.grad_check_trials;
    j["tomo_check_repeats"] = config.tomo_check_repeats;
    j["compare_ps_steps"] = config.compare_ps_steps;
    j["compare_targets"] = config.compare_targets;
    j["synth_target"] = config.synth_target;
    j["regression_task"] = config.regression_task;
    return j.dump(indent);
}

}  // namespace robustprep::cli
