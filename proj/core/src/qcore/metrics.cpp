#include "robustprep/qcore/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace robustprep {

namespace {

void check_dims(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
}

double purity_of(const Eigen::MatrixXcd& m) {
    // tr(m^2) = ||m||_F^2 for Hermitian m.
    return m.squaredNorm();
}

double pure_mixed_overlap(const StateVector& psi, const Eigen::MatrixXcd& sigma) {
    check_dims(psi.dim(), static_cast<std::size_t>(sigma.rows()));
    const Eigen::VectorXcd v = psi.to_eigen();
    return (v.adjoint() * sigma * v).value().real();
}

}  // namespace

double fidelity(const StateVector& a, const StateVector& b) {
    check_dims(a.dim(), b.dim());
    complex_t overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::norm(overlap);
}

double fidelity(const StateVector& psi, const DensityMatrix& sigma) {
    return std::clamp(pure_mixed_overlap(psi, sigma.entries()), 0.0, 1.0);
}

double fidelity(const DensityMatrix& sigma, const StateVector& psi) {
    return fidelity(psi, sigma);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_dims(rho.dim(), sigma.dim());
    // The formula is symmetric; canonicalize the argument order so the two
    // call orders produce bit-identical results.
    if (purity_of(rho.entries()) < purity_of(sigma.entries())) {
        return fidelity(sigma, rho);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rho_eig(rho.entries());
    Eigen::VectorXd sqrt_vals = rho_eig.eigenvalues();
    for (Eigen::Index i = 0; i < sqrt_vals.size(); ++i) {
        sqrt_vals[i] = std::sqrt(std::max(sqrt_vals[i], 0.0));
    }
    const Eigen::MatrixXcd sqrt_rho = rho_eig.eigenvectors() *
                                      sqrt_vals.asDiagonal() *
                                      rho_eig.eigenvectors().adjoint();
    const Eigen::MatrixXcd inner = sqrt_rho * sigma.entries() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_eig(inner,
                                                              Eigen::EigenvaluesOnly);
    double trace_sqrt = 0.0;
    for (Eigen::Index i = 0; i < inner_eig.eigenvalues().size(); ++i) {
        trace_sqrt += std::sqrt(std::max(inner_eig.eigenvalues()[i], 0.0));
    }
    return std::clamp(trace_sqrt * trace_sqrt, 0.0, 1.0);
}

double fidelity(const StateVector& psi, const HermitianEstimate& sigma) {
    return pure_mixed_overlap(psi, sigma.entries());
}

double fidelity(const DensityMatrix& rho, const HermitianEstimate& sigma) {
    check_dims(rho.dim(), sigma.dim());
    return (rho.entries() * sigma.entries()).trace().real();
}

double purity(const DensityMatrix& m) { return purity_of(m.entries()); }

double purity(const HermitianEstimate& m) { return purity_of(m.entries()); }

double coherent_error(const DensityMatrix& target, const HermitianEstimate& measured) {
    check_dims(target.dim(), measured.dim());
    if (purity(target) < 1.0 - 1e-9) {
        throw std::invalid_argument("coherent_error: target state must be pure");
    }
    const double measured_purity = purity(measured);
    if (measured_purity <= 0.0) {
        throw std::invalid_argument("coherent_error: degenerate estimate (purity <= 0)");
    }
    const double overlap = (target.entries() * measured.entries()).trace().real();
    return std::max(0.0, 1.0 - overlap / std::sqrt(measured_purity));
}

IncoherentStrength incoherent_strength(const DensityMatrix& target,
                                       const HermitianEstimate& measured) {
    check_dims(target.dim(), measured.dim());
    if (purity(target) < 1.0 - 1e-9) {
        throw std::invalid_argument("incoherent_strength: target state must be pure");
    }
    const double d = static_cast<double>(measured.dim());
    const double pur = purity(measured);
    if (pur > 1.0) {
        return {0.0, false};
    }
    // purity = (1 - 1/d)(1 - p)^2 + 1/d, monotone decreasing in p on [0, 1].
    const double ratio = (pur - 1.0 / d) / (1.0 - 1.0 / d);
    if (ratio < 0.0) {
        return {1.0, true};
    }
    const double p = 1.0 - std::sqrt(ratio);
    return {std::clamp(p, 0.0, 1.0), false};
}

}  // namespace robustprep
