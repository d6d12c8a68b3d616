#include "robustprep/train/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace robustprep::train {

StateLoss state_loss_raw(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& target) {
    if (rho.rows() != target.rows() || rho.cols() != target.cols() ||
        rho.rows() != rho.cols()) {
        throw std::invalid_argument("state_loss: dimension mismatch");
    }
    if (hermiticity_deviation(rho) > 1e-8 || hermiticity_deviation(target) > 1e-8) {
        throw std::invalid_argument("state_loss: inputs must be Hermitian");
    }
    const Eigen::MatrixXcd diff = rho - target;
    const double loss = diff.norm();  // Frobenius
    StateLoss out;
    out.loss = loss;
    if (loss < 1e-12) {
        out.cotangent = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    } else {
        out.cotangent = diff / loss;
    }
    return out;
}

StateLoss state_loss(const HermitianEstimate& rho, const DensityMatrix& target) {
    return state_loss_raw(rho.entries(), target.entries());
}

}  // namespace robustprep::train
