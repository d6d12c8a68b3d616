// Training losses over density-matrix estimates.
#pragma once

#include <Eigen/Dense>

#include "robustprep/qcore/types.hpp"

namespace robustprep::train {

// Frobenius state loss sqrt(tr((rho - target)^2)) with its upstream gradient
// M = (rho - target) / loss (zero when loss < 1e-12). The square root makes
// the loss a nonlinear function of the estimate, which is what lets a noisy
// upstream gradient carry device-noise information.
struct StateLoss {
    double loss = 0.0;
    Eigen::MatrixXcd cotangent;  // d loss / d rho, Hermitian
};

StateLoss state_loss(const HermitianEstimate& rho, const DensityMatrix& target);

// Also usable with two raw Hermitian matrices (test oracles, synthesis).
StateLoss state_loss_raw(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& target);

}  // namespace robustprep::train
