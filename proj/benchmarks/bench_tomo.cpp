// Shadow-estimate accumulation cost over settings and qubit count.
#include <benchmark/benchmark.h>

#include "robustprep/device/device.hpp"
#include "robustprep/prep/mottonen.hpp"
#include "robustprep/prep/targets.hpp"
#include "robustprep/tomo/tomography.hpp"

namespace {

using namespace robustprep;

void BM_estimate_state(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit circuit = prep::mottonen_decompose(prep::haar_state(n, 5));
    device::NoiseModel noise;
    noise.with_symmetric_readout_flip(n, 0.02);
    noise.seed = 6;
    const auto plan = tomo::build_full_plan(n, 1024);
    const auto counts = device::execute(circuit, {}, plan.settings, 1024, noise);
    const std::optional<std::vector<Eigen::Matrix2d>> mitigation = noise.readout;
    for (auto _ : state) {
        auto estimate = tomo::estimate_state(counts, mitigation);
        benchmark::DoNotOptimize(estimate.entries().data());
    }
    state.SetLabel(std::to_string(plan.settings.size()) + " settings");
}
BENCHMARK(BM_estimate_state)->DenseRange(2, 5);

void BM_snapshot_materialize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const device::MeasurementSetting setting{std::string(static_cast<std::size_t>(n), 'X')};
    const auto snap =
        tomo::snapshot_from_outcome(setting, std::string(static_cast<std::size_t>(n), '0'));
    for (auto _ : state) {
        auto m = snap.materialize();
        benchmark::DoNotOptimize(m.data());
    }
}
BENCHMARK(BM_snapshot_materialize)->DenseRange(2, 6);

}  // namespace
