// Gradient-free simplex optimizer (reflection 1, expansion 2, contraction
// 0.5, shrink 0.5) used as the black-box baseline.
#pragma once

#include <functional>
#include <vector>

namespace robustprep::train {

struct NelderMeadResult {
    std::vector<double> best_params;
    double best_loss = 0.0;
    long evaluations = 0;
    bool budget_exhausted = false;
    // (evaluation count, best loss so far) recorded at every improvement.
    std::vector<std::pair<long, double>> trace;
};

// Deterministic given theta0: the initial simplex is theta0 plus a 0.05 rad
// perturbation per axis. Stops when the budget is exhausted or the simplex
// collapses (loss spread < 1e-12 and vertex spread < 1e-10).
NelderMeadResult nelder_mead_optimize(
    const std::function<double(const std::vector<double>&)>& evaluate,
    std::vector<double> theta0, long budget);

}  // namespace robustprep::train
