#include "robustprep/train/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace robustprep::train {

namespace {

constexpr double kReflection = 1.0;
constexpr double kExpansion = 2.0;
constexpr double kContraction = 0.5;
constexpr double kShrink = 0.5;
constexpr double kInitialStep = 0.05;

}  // namespace

NelderMeadResult nelder_mead_optimize(
    const std::function<double(const std::vector<double>&)>& evaluate,
    std::vector<double> theta0, long budget) {
    const std::size_t n = theta0.size();
    if (n == 0) {
        throw std::invalid_argument("nelder_mead_optimize: empty parameter vector");
    }
    if (budget < static_cast<long>(n) + 1) {
        throw std::invalid_argument("nelder_mead_optimize: budget must cover the simplex");
    }

    NelderMeadResult result;
    result.best_loss = std::numeric_limits<double>::infinity();

    auto eval = [&](const std::vector<double>& x) {
        const double f = evaluate(x);
        ++result.evaluations;
        if (f < result.best_loss) {
            result.best_loss = f;
            result.best_params = x;
            result.trace.emplace_back(result.evaluations, f);
        }
        return f;
    };
    auto budget_left = [&]() { return result.evaluations < budget; };

    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.reserve(n + 1);
    simplex.push_back(theta0);
    for (std::size_t i = 0; i < n; ++i) {
        auto vertex = theta0;
        vertex[i] += kInitialStep;
        simplex.push_back(std::move(vertex));
    }
    for (const auto& vertex : simplex) {
        values.push_back(eval(vertex));
    }

    std::vector<std::size_t> order(n + 1);
    while (budget_left()) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        // Convergence: simplex collapsed.
        double value_spread = values[worst] - values[best];
        double vertex_spread = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            vertex_spread = std::max(vertex_spread,
                                     std::abs(simplex[worst][i] - simplex[best][i]));
        }
        if (value_spread < 1e-12 && vertex_spread < 1e-10) {
            break;
        }

        // Centroid of all but the worst vertex.
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v <= n; ++v) {
            if (v == worst) {
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += simplex[v][i];
            }
        }
        for (auto& c : centroid) {
            c /= static_cast<double>(n);
        }

        auto blend = [&](double coeff) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = centroid[i] + coeff * (centroid[i] - simplex[worst][i]);
            }
            return x;
        };

        auto reflected = blend(kReflection);
        const double f_reflected = eval(reflected);
        if (f_reflected < values[best] && budget_left()) {
            auto expanded = blend(kExpansion);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                values[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = std::move(reflected);
            values[worst] = f_reflected;
            continue;
        }
        if (!budget_left()) {
            break;
        }
        // Contraction (outside if the reflection improved on the worst).
        const bool outside = f_reflected < values[worst];
        auto contracted = blend(outside ? kContraction : -kContraction);
        const double f_contracted = eval(contracted);
        if (f_contracted < std::min(f_reflected, values[worst])) {
            simplex[worst] = std::move(contracted);
            values[worst] = f_contracted;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t v = 0; v <= n && budget_left(); ++v) {
            if (v == best) {
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                simplex[v][i] = simplex[best][i] + kShrink * (simplex[v][i] - simplex[best][i]);
            }
            values[v] = eval(simplex[v]);
        }
    }

    result.budget_exhausted = result.evaluations >= budget;
    return result;
}

}  // namespace robustprep::train
