// Classical shadow tomography with optional readout-error mitigation.
//
// Each shot in basis b with outcome s contributes the snapshot
//   (x)_q (3 U_bq^dag |s_q><s_q| U_bq - I),
// whose expectation over uniformly random bases equals the measured state.
// Estimates are plain means of snapshots, accumulated directly into the
// 2^n x 2^n running sum so memory does not grow with shot count.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "robustprep/device/device.hpp"
#include "robustprep/qcore/types.hpp"

namespace robustprep::tomo {

using device::DeviceCounts;
using device::MeasurementSetting;

// Single-shot estimator factor product; materialization deferred.
struct Snapshot {
    std::vector<Eigen::Matrix2cd> factors;  // factor q acts on qubit q

    Eigen::MatrixXcd materialize() const;
};

Snapshot snapshot_from_outcome(const MeasurementSetting& setting, std::string_view outcome);

enum class PlanMode { full_enumeration, sampled };

struct TomographyPlan {
    std::vector<MeasurementSetting> settings;
    std::int64_t shots_per_setting = 0;
    PlanMode mode = PlanMode::full_enumeration;
};

// All 3^n settings in lexicographic order (X < Y < Z, qubit 0 first).
TomographyPlan build_full_plan(int n_qubits, std::int64_t shots_per_setting);

// k distinct settings drawn uniformly without replacement, deterministic in
// the seed. Requires k <= 3^n.
TomographyPlan build_sampled_plan(int n_qubits, int k, std::int64_t shots_per_setting,
                                  std::uint64_t seed);

// Mean snapshot over all recorded shots. When mitigation matrices are given,
// each setting's empirical distribution is corrected by the inverse confusion
// tensor, clipped at zero, and renormalized before snapshots are formed.
HermitianEstimate estimate_state(
    std::span<const DeviceCounts> counts,
    const std::optional<std::vector<Eigen::Matrix2d>>& mitigation = std::nullopt);

// Same estimator fed with exact per-setting outcome distributions (uniform
// setting weights). Used for infinite-shot identities and analysis.
HermitianEstimate estimate_state_from_distributions(
    std::span<const MeasurementSetting> settings, const std::vector<std::vector<double>>& dists,
    const std::optional<std::vector<Eigen::Matrix2d>>& mitigation = std::nullopt);

// Readout correction on a raw outcome distribution: applies the inverse
// confusion tensor, clips negatives at zero, renormalizes. Throws on a
// singular confusion matrix (|det| < 1e-6).
std::vector<double> mitigate_distribution(std::vector<double> probs,
                                          const std::vector<Eigen::Matrix2d>& confusion);

}  // namespace robustprep::tomo
