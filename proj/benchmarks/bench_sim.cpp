// Statevector forward/backward scaling over qubit count and parameter count.
#include <benchmark/benchmark.h>

#include "robustprep/prep/ansatz.hpp"
#include "robustprep/prep/coupling.hpp"
#include "robustprep/qcore/rng.hpp"
#include "robustprep/sim/simulator.hpp"

namespace {

using namespace robustprep;

Circuit ansatz_for(int n_qubits, int n_blocks) {
    prep::AnsatzSpec spec;
    spec.n_qubits = n_qubits;
    spec.coupling = prep::path_coupling(n_qubits);
    spec.n_blocks = n_blocks;
    return prep::build_ansatz(spec);
}

std::vector<double> params_for(const Circuit& circuit) {
    Rng rng(1);
    std::vector<double> theta(static_cast<std::size_t>(circuit.n_params));
    for (auto& t : theta) {
        t = rng.uniform(-1.0, 1.0);
    }
    return theta;
}

void BM_forward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit circuit = ansatz_for(n, 4 * n);
    const auto theta = params_for(circuit);
    for (auto _ : state) {
        auto tape = sim::forward(circuit, theta);
        benchmark::DoNotOptimize(tape.state.amplitudes().data());
    }
    state.SetLabel(std::to_string(circuit.ops.size()) + " ops");
}
BENCHMARK(BM_forward)->DenseRange(3, 10);

void BM_backward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit circuit = ansatz_for(n, 4 * n);
    const auto theta = params_for(circuit);
    const auto tape = sim::forward(circuit, theta);
    Rng rng(2);
    std::vector<complex_t> xi(tape.state.dim());
    for (auto& x : xi) {
        x = complex_t{rng.normal(), rng.normal()};
    }
    for (auto _ : state) {
        auto grad = sim::backward(tape, xi);
        benchmark::DoNotOptimize(grad.data());
    }
    state.SetLabel(std::to_string(circuit.n_params) + " params");
}
BENCHMARK(BM_backward)->DenseRange(3, 10);

// Adjoint cost is flat in the parameter count at fixed op count.
void BM_backward_param_scaling(benchmark::State& state) {
    const int n_blocks = static_cast<int>(state.range(0));
    const Circuit circuit = ansatz_for(5, n_blocks);
    const auto theta = params_for(circuit);
    const auto tape = sim::forward(circuit, theta);
    std::vector<complex_t> xi(tape.state.dim(), complex_t{0.1, 0.0});
    for (auto _ : state) {
        auto grad = sim::backward(tape, xi);
        benchmark::DoNotOptimize(grad.data());
    }
    state.SetLabel(std::to_string(circuit.n_params) + " params");
}
BENCHMARK(BM_backward_param_scaling)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
