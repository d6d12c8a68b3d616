// Emulated-device cost: density-matrix evolution and measurement sampling.
#include <benchmark/benchmark.h>

#include "robustprep/device/device.hpp"
#include "robustprep/prep/ansatz.hpp"
#include "robustprep/prep/coupling.hpp"
#include "robustprep/qcore/rng.hpp"
#include "robustprep/tomo/tomography.hpp"

namespace {

using namespace robustprep;

void BM_density_matrix_evolution(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    prep::AnsatzSpec spec;
    spec.n_qubits = n;
    spec.coupling = prep::path_coupling(n);
    spec.n_blocks = 4 * n;
    const Circuit circuit = prep::build_ansatz(spec);
    Rng rng(3);
    std::vector<double> theta(static_cast<std::size_t>(circuit.n_params));
    for (auto& t : theta) {
        t = rng.uniform(-1.0, 1.0);
    }
    device::NoiseModel noise;
    noise.with_uniform_coherent(0.03).with_depolarizing(0.002, 0.01);
    for (auto _ : state) {
        auto rho = device::detail::evolve_density_matrix(circuit, theta, noise);
        benchmark::DoNotOptimize(rho.data());
    }
    state.SetLabel(std::to_string(circuit.ops.size()) + " ops");
}
BENCHMARK(BM_density_matrix_evolution)->DenseRange(2, 6);

void BM_execute_full_tomography(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    prep::AnsatzSpec spec;
    spec.n_qubits = n;
    spec.coupling = prep::path_coupling(n);
    spec.n_blocks = 3 * n;
    const Circuit circuit = prep::build_ansatz(spec);
    Rng rng(4);
    std::vector<double> theta(static_cast<std::size_t>(circuit.n_params));
    for (auto& t : theta) {
        t = rng.uniform(-1.0, 1.0);
    }
    device::NoiseModel noise;
    noise.with_uniform_coherent(0.03).with_depolarizing(0.002, 0.01);
    noise.with_symmetric_readout_flip(n, 0.02);
    const auto plan = tomo::build_full_plan(n, 1024);
    for (auto _ : state) {
        auto counts = device::execute(circuit, theta, plan.settings, 1024, noise);
        benchmark::DoNotOptimize(counts.data());
    }
    state.SetLabel(std::to_string(plan.settings.size()) + " settings x 1024 shots");
}
BENCHMARK(BM_execute_full_tomography)->DenseRange(2, 4);

}  // namespace
