#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "robustprep/cli/config.hpp"
#include "robustprep/cli/run.hpp"
#include "robustprep/io/amplitude_io.hpp"

using namespace robustprep;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("robustprep_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string small_prepare_config(const fs::path& out_dir, std::uint64_t seed) {
    nlohmann::json j = {
        {"version", 1},
        {"experiment", "prepare"},
        {"seed", seed},
        {"output_dir", out_dir.string()},
        {"target", {{"kind", "haar"}, {"n_qubits", 3}, {"seed", 5}}},
        {"ansatz", {{"n_qubits", 3}, {"n_blocks", 6}, {"coupling", "path"}}},
        {"noise",
         {{"coherent", {{"all", {{"epsilon", 0.03}}}}},
          {"p1", 0.001},
          {"p2", 0.005},
          {"readout_flip", 0.02}}},
        {"train",
         {{"noise_free_steps", 80},
          {"noise_aware_steps", 5},
          {"tomography", {{"mode", "full"}, {"shots_per_setting", 128}}}}}};
    return j.dump();
}

#ifdef ROBUSTPREP_CLI_PATH
int run_cli(const std::string& args) {
    const std::string command = std::string(ROBUSTPREP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("config parsing: schema validation") {
    CHECK_THROWS(cli::parse_config("not json"));
    CHECK_THROWS(cli::parse_config("[]"));
    CHECK_THROWS(cli::parse_config("{}"));  // missing experiment
    CHECK_THROWS(cli::parse_config(R"({"experiment": "noSuch"})"));
    CHECK_THROWS(cli::parse_config(R"({"experiment": "prepare", "version": 9})"));
    CHECK_THROWS(cli::parse_config(
        R"({"experiment": "prepare", "ansatz": {"n_qubits": 3, "n_blocks": 0}})"));
    CHECK_THROWS(cli::parse_config(
        R"({"experiment": "prepare", "ansatz": {"n_qubits": 3, "coupling": [[0,1]]}})"));
    CHECK_THROWS(cli::parse_config(
        R"({"experiment": "prepare", "train": {"optimizer": "rmsprop"}})"));
    CHECK_THROWS(cli::parse_config(
        R"({"experiment": "regress", "regression_task": 5})"));

    const auto config = cli::parse_config(small_prepare_config("out", 7));
    CHECK(config.kind == cli::ExperimentKind::prepare);
    CHECK(config.seed == 7);
    CHECK(config.ansatz.n_blocks == 6);
    CHECK(config.noise.readout.size() == 3);  // flip expanded per qubit
    CHECK(config.train.readout_confusion.has_value());

    // Root-seed fanout: sub-seeds are derived deterministically and change
    // with the root.
    const auto again = cli::parse_config(small_prepare_config("out", 7));
    CHECK(config.noise.seed == again.noise.seed);
    const auto other = cli::parse_config(small_prepare_config("out", 8));
    CHECK(config.noise.seed != other.noise.seed);

    // Echo stays parseable and preserves the experiment.
    const auto echo = nlohmann::json::parse(cli::config_to_json(config));
    CHECK(echo.at("experiment") == "prepare");
}

TEST_CASE("run_experiment writes confined outputs and is rerun-identical") {
    const fs::path dir_a = fresh_dir("rerun_a");
    const fs::path dir_b = fresh_dir("rerun_b");
    const auto config_a = cli::parse_config(small_prepare_config(dir_a, 11));
    const auto config_b = cli::parse_config(small_prepare_config(dir_b, 11));

    CHECK(cli::run_experiment(config_a) == cli::kExitOk);
    CHECK(cli::run_experiment(config_b) == cli::kExitOk);

    for (const char* name : {"report.csv", "summary.json", "target_amplitudes.txt",
                             "final_state_amplitudes.txt", "run_manifest.json"}) {
        CHECK(fs::exists(dir_a / name));
        // Outputs stay inside the configured directory.
        CHECK(fs::canonical(dir_a / name).string().find(fs::canonical(dir_a).string()) == 0);
    }

    // Byte-identical CSV and summary across reruns with the same seed.
    CHECK(slurp(dir_a / "report.csv") == slurp(dir_b / "report.csv"));
    CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));

    // Manifests agree except for the wall-time field.
    auto manifest_a = nlohmann::json::parse(slurp(dir_a / "run_manifest.json"));
    auto manifest_b = nlohmann::json::parse(slurp(dir_b / "run_manifest.json"));
    manifest_a.erase("wall_time_seconds");
    manifest_b.erase("wall_time_seconds");
    manifest_a["config"].erase("output_dir");
    manifest_b["config"].erase("output_dir");
    CHECK(manifest_a == manifest_b);

    const auto summary = nlohmann::json::parse(slurp(dir_a / "summary.json"));
    CHECK(summary.at("sim_fidelity").get<double>() > 0.7);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("finetune experiment reports before/after device metrics") {
    const fs::path dir = fresh_dir("finetune");
    nlohmann::json j = nlohmann::json::parse(small_prepare_config(dir, 13));
    j["experiment"] = "finetune";
    j["train"]["noise_aware_steps"] = 8;
    const auto config = cli::parse_config(j.dump());
    CHECK(cli::run_experiment(config) == cli::kExitOk);
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary.contains("device_before"));
    CHECK(summary.contains("device_after"));
    CHECK(summary["device_before"].contains("coherent_error"));
    fs::remove_all(dir);
}

TEST_CASE("effective_jobs honors the thread cap") {
    unsetenv("ROBUSTPREP_THREADS");
    CHECK(cli::effective_jobs(4) == 4);
    CHECK(cli::effective_jobs(0) == 1);
    setenv("ROBUSTPREP_THREADS", "2", 1);
    CHECK(cli::effective_jobs(4) == 2);
    CHECK(cli::effective_jobs(1) == 1);
    unsetenv("ROBUSTPREP_THREADS");
}

#ifdef ROBUSTPREP_CLI_PATH

TEST_CASE("cli binary: malformed config exits 2 with no partial outputs") {
    const fs::path dir = fresh_dir("malformed");
    const fs::path config_path = fs::temp_directory_path() / "robustprep_bad_config.json";
    {
        std::ofstream out(config_path);
        out << "{ this is not json";
    }
    CHECK(run_cli("run --config " + config_path.string() + " --out " + dir.string()) == 2);
    CHECK(!fs::exists(dir));

    // Schema-invalid but well-formed JSON also exits 2 before writing.
    {
        std::ofstream out(config_path);
        out << R"({"experiment": "prepare", "ansatz": {"n_qubits": 2, "n_blocks": -3}})";
    }
    CHECK(run_cli("run --config " + config_path.string() + " --out " + dir.string()) == 2);
    CHECK(!fs::exists(dir));
    fs::remove(config_path);
}

TEST_CASE("cli binary: run executes a config end to end") {
    const fs::path dir = fresh_dir("run_e2e");
    const fs::path config_path = fs::temp_directory_path() / "robustprep_ok_config.json";
    {
        std::ofstream out(config_path);
        out << small_prepare_config(dir, 3);
    }
    CHECK(run_cli("run --config " + config_path.string()) == 0);
    CHECK(fs::exists(dir / "summary.json"));

    // Seed override changes the outputs deterministically.
    const fs::path dir2 = fresh_dir("run_e2e_seed");
    CHECK(run_cli("run --config " + config_path.string() + " --out " + dir2.string() +
                  " --seed 99") == 0);
    CHECK(slurp(dir / "report.csv") != slurp(dir2 / "report.csv"));

    fs::remove(config_path);
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("cli binary: gen-target writes a normalized amplitude file") {
    const fs::path file = fs::temp_directory_path() / "robustprep_sine3.txt";
    CHECK(run_cli("gen-target sine --qubits 3 --out " + file.string()) == 0);
    const StateVector state = io::read_amplitudes_file(file.string());
    CHECK(state.n_qubits() == 3);

    // Header line plus 8 amplitude lines.
    std::ifstream in(file);
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            ++lines;
        }
    }
    CHECK(lines == 9);
    fs::remove(file);

    CHECK(run_cli("gen-target unknown --qubits 3 --out " + file.string()) == 2);
}

TEST_CASE("cli binary: grad-check sweep stays below the tolerance") {
    const fs::path dir = fresh_dir("grad_check");
    CHECK(run_cli("grad-check --qubits 3 --trials 8 --out " + dir.string()) == 0);
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("max_rel_error").get<double>() < 1e-5);
    fs::remove_all(dir);
}

TEST_CASE("cli binary: compare-ad emits counts and fidelities") {
    const fs::path dir = fresh_dir("compare_ad");
    CHECK(run_cli("compare-ad --qubits 3 --blocks 6 --targets 2 --steps 150 --out " +
                  dir.string()) == 0);
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("ansatz_two_qubit_gates").get<int>() == 6);
    CHECK(summary.at("mottonen_two_qubit_gates_mean").get<double>() > 6.0);
    const std::string csv = slurp(dir / "compare_ad.csv");
    CHECK(csv.find("mottonen") != std::string::npos);
    CHECK(csv.find("ansatz") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli binary: compare-optimizers emits one curve per method") {
    const fs::path dir = fresh_dir("compare_opt");
    CHECK(run_cli("compare-optimizers --qubits 3 --blocks 4 --ps-steps 1 --sample-k 9 "
                  "--shots 64 --pretrain-steps 120 --out " +
                  dir.string()) == 0);
    const std::string csv = slurp(dir / "compare_optimizers.csv");
    for (const char* method : {"robust", "parameter_shift", "nelder_mead"}) {
        CHECK(csv.find(method) != std::string::npos);
    }
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("tasks").size() == 4);
    fs::remove_all(dir);
}

#endif  // ROBUSTPREP_CLI_PATH
