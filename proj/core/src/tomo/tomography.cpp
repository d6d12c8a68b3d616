#include "robustprep/tomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "robustprep/qcore/gates.hpp"
#include "robustprep/qcore/rng.hpp"

namespace robustprep::tomo {

namespace {

constexpr char kBasisLetters[3] = {'X', 'Y', 'Z'};

Eigen::Matrix2cd snapshot_factor(char basis, char bit) {
    const Eigen::Matrix2cd u = basis_change_unitary(basis);
    Eigen::Vector2cd ket = Eigen::Vector2cd::Zero();
    ket(bit == '1' ? 1 : 0) = 1.0;
    const Eigen::Vector2cd rotated = u.adjoint() * ket;
    return 3.0 * (rotated * rotated.adjoint()) - Eigen::Matrix2cd::Identity();
}

// Accumulates weight * (x)_q factor(b_q, s_q(index)) into acc.
void accumulate_snapshot(Eigen::MatrixXcd& acc, const MeasurementSetting& setting,
                         std::uint64_t outcome_index, double weight) {
    const int n = static_cast<int>(setting.bases.size());
    std::vector<Eigen::Matrix2cd> factors;
    factors.reserve(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        const char bit = ((outcome_index >> q) & 1ULL) ? '1' : '0';
        factors.push_back(snapshot_factor(setting.bases[static_cast<std::size_t>(q)], bit));
    }
    const auto dim = static_cast<std::size_t>(acc.rows());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            complex_t entry{1.0, 0.0};
            for (int q = 0; q < n; ++q) {
                entry *= factors[static_cast<std::size_t>(q)]((r >> q) & 1, (c >> q) & 1);
            }
            acc(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
                weight * entry;
        }
    }
}

}  // namespace

std::vector<double> mitigate_distribution(std::vector<double> probs,
                                          const std::vector<Eigen::Matrix2d>& confusion) {
    for (int q = 0; q < static_cast<int>(confusion.size()); ++q) {
        const Eigen::Matrix2d& a = confusion[static_cast<std::size_t>(q)];
        if (std::abs(a.determinant()) < 1e-6) {
            throw std::invalid_argument(
                "estimate_state: singular confusion matrix for qubit " + std::to_string(q));
        }
        const Eigen::Matrix2d inv = a.inverse();
        const std::size_t step = std::size_t{1} << q;
        for (std::size_t base = 0; base < probs.size(); base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                const double p0 = probs[i];
                const double p1 = probs[i + step];
                probs[i] = inv(0, 0) * p0 + inv(0, 1) * p1;
                probs[i + step] = inv(1, 0) * p0 + inv(1, 1) * p1;
            }
        }
    }
    double total = 0.0;
    for (auto& p : probs) {
        p = std::max(p, 0.0);
        total += p;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("estimate_state: mitigation produced an empty distribution");
    }
    for (auto& p : probs) {
        p /= total;
    }
    return probs;
}

namespace {

MeasurementSetting setting_from_ternary(std::uint64_t code, int n_qubits) {
    std::string bases(static_cast<std::size_t>(n_qubits), 'X');
    // Most significant ternary digit on qubit 0 so the enumerated list is in
    // lexicographic order of the basis string.
    for (int q = n_qubits - 1; q >= 0; --q) {
        bases[static_cast<std::size_t>(q)] = kBasisLetters[code % 3];
        code /= 3;
    }
    return MeasurementSetting{std::move(bases)};
}

std::uint64_t pow3(int n) {
    std::uint64_t result = 1;
    for (int i = 0; i < n; ++i) {
        result *= 3;
    }
    return result;
}

}  // namespace

Eigen::MatrixXcd Snapshot::materialize() const {
    const int n = static_cast<int>(factors.size());
    const auto dim = static_cast<Eigen::Index>(dim_for_qubits(n));
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            complex_t entry{1.0, 0.0};
            for (int q = 0; q < n; ++q) {
                entry *= factors[static_cast<std::size_t>(q)](
                    (static_cast<std::uint64_t>(r) >> q) & 1,
                    (static_cast<std::uint64_t>(c) >> q) & 1);
            }
            out(r, c) = entry;
        }
    }
    return out;
}

Snapshot snapshot_from_outcome(const MeasurementSetting& setting, std::string_view outcome) {
    if (setting.bases.size() != outcome.size()) {
        throw std::invalid_argument("snapshot_from_outcome: setting/outcome length mismatch");
    }
    setting.validate(static_cast<int>(setting.bases.size()));
    Snapshot snap;
    snap.factors.reserve(setting.bases.size());
    for (std::size_t q = 0; q < setting.bases.size(); ++q) {
        if (outcome[q] != '0' && outcome[q] != '1') {
            throw std::invalid_argument("snapshot_from_outcome: outcome must be a bitstring");
        }
        snap.factors.push_back(snapshot_factor(setting.bases[q], outcome[q]));
    }
    return snap;
}

TomographyPlan build_full_plan(int n_qubits, std::int64_t shots_per_setting) {
    if (n_qubits < 1) {
        throw std::invalid_argument("build_full_plan: n_qubits must be >= 1");
    }
    const std::uint64_t total = pow3(n_qubits);
    TomographyPlan plan;
    plan.mode = PlanMode::full_enumeration;
    plan.shots_per_setting = shots_per_setting;
    plan.settings.reserve(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        plan.settings.push_back(setting_from_ternary(code, n_qubits));
    }
    return plan;
}

TomographyPlan build_sampled_plan(int n_qubits, int k, std::int64_t shots_per_setting,
                                  std::uint64_t seed) {
    const std::uint64_t total = pow3(n_qubits);
    if (k < 1 || static_cast<std::uint64_t>(k) > total) {
        throw std::invalid_argument("build_sampled_plan: k must lie in [1, 3^n]");
    }
    // Uniform sample without replacement via rejection on setting codes.
    Rng rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    std::vector<std::uint64_t> codes;
    codes.reserve(static_cast<std::size_t>(k));
    while (codes.size() < static_cast<std::size_t>(k)) {
        const std::uint64_t code = rng.uniform_int(total);
        if (chosen.insert(code).second) {
            codes.push_back(code);
        }
    }
    TomographyPlan plan;
    plan.mode = PlanMode::sampled;
    plan.shots_per_setting = shots_per_setting;
    plan.settings.reserve(codes.size());
    for (std::uint64_t code : codes) {
        plan.settings.push_back(setting_from_ternary(code, n_qubits));
    }
    return plan;
}

HermitianEstimate estimate_state(
    std::span<const DeviceCounts> counts,
    const std::optional<std::vector<Eigen::Matrix2d>>& mitigation) {
    if (counts.empty()) {
        throw std::invalid_argument("estimate_state: no counts supplied");
    }
    const int n = static_cast<int>(counts.front().setting.bases.size());
    const auto dim = static_cast<std::size_t>(dim_for_qubits(n));

    Eigen::MatrixXcd acc =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    double total_weight = 0.0;
    for (const auto& dc : counts) {
        if (dc.setting.bases.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("estimate_state: mixed qubit counts");
        }
        double setting_shots = 0.0;
        std::vector<double> dist(dim, 0.0);
        for (const auto& [bits, count] : dc.histogram) {
            if (bits.size() != static_cast<std::size_t>(n)) {
                throw std::invalid_argument("estimate_state: bitstring length mismatch");
            }
            dist[device::bitstring_to_index(bits)] += count;
            setting_shots += count;
        }
        if (setting_shots <= 0.0) {
            throw std::invalid_argument("estimate_state: empty histogram");
        }
        for (auto& p : dist) {
            p /= setting_shots;
        }
        if (mitigation.has_value()) {
            if (static_cast<int>(mitigation->size()) != n) {
                throw std::invalid_argument(
                    "estimate_state: mitigation must list one matrix per qubit");
            }
            dist = mitigate_distribution(std::move(dist), *mitigation);
        }
        for (std::size_t outcome = 0; outcome < dim; ++outcome) {
            if (dist[outcome] > 0.0) {
                accumulate_snapshot(acc, dc.setting, outcome, setting_shots * dist[outcome]);
            }
        }
        total_weight += setting_shots;
    }
    acc /= total_weight;
    // Snapshots are Hermitian with unit trace by construction; symmetrize away
    // the accumulated floating-point dust before the invariant check.
    acc = ((acc + acc.adjoint()) / 2.0).eval();
    return HermitianEstimate(n, std::move(acc));
}

HermitianEstimate estimate_state_from_distributions(
    std::span<const MeasurementSetting> settings, const std::vector<std::vector<double>>& dists,
    const std::optional<std::vector<Eigen::Matrix2d>>& mitigation) {
    if (settings.empty() || settings.size() != dists.size()) {
        throw std::invalid_argument(
            "estimate_state_from_distributions: settings/distributions mismatch");
    }
    std::vector<DeviceCounts> counts;
    counts.reserve(settings.size());
    const int n = static_cast<int>(settings.front().bases.size());
    for (std::size_t s = 0; s < settings.size(); ++s) {
        DeviceCounts dc;
        dc.setting = settings[s];
        dc.shots = 1;
        if (dists[s].size() != dim_for_qubits(n)) {
            throw std::invalid_argument(
                "estimate_state_from_distributions: distribution length mismatch");
        }
        for (std::size_t outcome = 0; outcome < dists[s].size(); ++outcome) {
            if (dists[s][outcome] != 0.0) {
                dc.histogram[device::index_to_bitstring(outcome, n)] = dists[s][outcome];
            }
        }
        counts.push_back(std::move(dc));
    }
    return estimate_state(counts, mitigation);
}

}  // namespace robustprep::tomo
