// First-order parameter optimizers. One optimizer instance is carried across
// the noise-free and noise-aware phases so the moment estimates survive the
// phase boundary.
#pragma once

#include <span>
#include <variant>
#include <vector>

namespace robustprep::train {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct SgdConfig {};

using OptimizerConfig = std::variant<AdamConfig, SgdConfig>;

class Optimizer {
  public:
    Optimizer(OptimizerConfig config, double learning_rate, std::size_t n_params);

    // In-place descent step along `gradient`.
    void step(std::span<double> params, std::span<const double> gradient);

    double learning_rate() const { return lr_; }

  private:
    OptimizerConfig config_;
    double lr_;
    std::vector<double> m_;
    std::vector<double> v_;
    long t_ = 0;
};

}  // namespace robustprep::train
