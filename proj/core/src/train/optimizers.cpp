#include "robustprep/train/optimizers.hpp"

#include <cmath>
#include <stdexcept>

namespace robustprep::train {

Optimizer::Optimizer(OptimizerConfig config, double learning_rate, std::size_t n_params)
    : config_(config), lr_(learning_rate), m_(n_params, 0.0), v_(n_params, 0.0) {
    if (learning_rate <= 0.0) {
        throw std::invalid_argument("Optimizer: learning rate must be positive");
    }
}

void Optimizer::step(std::span<double> params, std::span<const double> gradient) {
    if (params.size() != m_.size() || gradient.size() != m_.size()) {
        throw std::invalid_argument("Optimizer: parameter/gradient size mismatch");
    }
    if (std::holds_alternative<SgdConfig>(config_)) {
        for (std::size_t k = 0; k < params.size(); ++k) {
            params[k] -= lr_ * gradient[k];
        }
        return;
    }
    const auto& adam = std::get<AdamConfig>(config_);
    ++t_;
    const double bias1 = 1.0 - std::pow(adam.beta1, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(adam.beta2, static_cast<double>(t_));
    for (std::size_t k = 0; k < params.size(); ++k) {
        m_[k] = adam.beta1 * m_[k] + (1.0 - adam.beta1) * gradient[k];
        v_[k] = adam.beta2 * v_[k] + (1.0 - adam.beta2) * gradient[k] * gradient[k];
        const double m_hat = m_[k] / bias1;
        const double v_hat = v_[k] / bias2;
        params[k] -= lr_ * m_hat / (std::sqrt(v_hat) + adam.epsilon);
    }
}

}  // namespace robustprep::train
