#include "robustprep/qcore/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace robustprep {

namespace {

double l2_norm(std::span<const complex_t> amps) {
    double sum = 0.0;
    for (const auto& a : amps) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void check_pure_shape(int n_qubits, std::size_t size) {
    if (n_qubits < 1) {
        throw std::invalid_argument("StateVector: n_qubits must be >= 1");
    }
    if (size != dim_for_qubits(n_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count " + std::to_string(size) +
                                    " does not equal 2^" + std::to_string(n_qubits));
    }
}

void check_square_shape(const char* what, int n_qubits, const Eigen::MatrixXcd& m) {
    const auto d = static_cast<Eigen::Index>(dim_for_qubits(n_qubits));
    if (n_qubits < 1 || m.rows() != d || m.cols() != d) {
        throw std::invalid_argument(std::string(what) + ": entries must be 2^n x 2^n");
    }
}

}  // namespace

double hermiticity_deviation(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    return m.rows() == m.cols() && hermiticity_deviation(m) <= tol;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian,
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

StateVector::StateVector(int n_qubits, std::vector<complex_t> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_pure_shape(n_qubits_, amplitudes_.size());
    const double norm = l2_norm(amplitudes_);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("StateVector: norm " + std::to_string(norm) +
                                    " is not 1 within 1e-10");
    }
}

StateVector StateVector::zero_state(int n_qubits) {
    return computational_basis(n_qubits, 0);
}

StateVector StateVector::computational_basis(int n_qubits, std::uint64_t index) {
    if (n_qubits < 1 || index >= dim_for_qubits(n_qubits)) {
        throw std::invalid_argument("StateVector: basis index out of range");
    }
    std::vector<complex_t> amps(dim_for_qubits(n_qubits), complex_t{0.0, 0.0});
    amps[index] = complex_t{1.0, 0.0};
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::normalized(int n_qubits, std::vector<complex_t> amplitudes) {
    check_pure_shape(n_qubits, amplitudes.size());
    const double norm = l2_norm(amplitudes);
    if (norm < 1e-12) {
        throw std::invalid_argument("StateVector: cannot normalize a zero vector");
    }
    for (auto& a : amplitudes) {
        a /= norm;
    }
    return StateVector(n_qubits, std::move(amplitudes));
}

Eigen::VectorXcd StateVector::to_eigen() const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
        v[static_cast<Eigen::Index>(i)] = amplitudes_[i];
    }
    return v;
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
    check_square_shape("DensityMatrix", n_qubits_, entries_);
    if (!is_hermitian(entries_, 1e-10)) {
        throw std::invalid_argument("DensityMatrix: entries are not Hermitian within 1e-10");
    }
    const double trace = entries_.trace().real();
    if (std::abs(trace - 1.0) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(trace) +
                                    " is not 1 within 1e-10");
    }
    if (min_eigenvalue(entries_) < -1e-9) {
        throw std::invalid_argument("DensityMatrix: entries are not PSD within 1e-9");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    const Eigen::VectorXcd v = psi.to_eigen();
    return DensityMatrix(psi.n_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_for_qubits(n_qubits));
    return DensityMatrix(n_qubits,
                         Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

HermitianEstimate::HermitianEstimate(int n_qubits, Eigen::MatrixXcd entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
    check_square_shape("HermitianEstimate", n_qubits_, entries_);
    if (!is_hermitian(entries_, 1e-10)) {
        throw std::invalid_argument(
            "HermitianEstimate: entries are not Hermitian within 1e-10");
    }
    const double trace = entries_.trace().real();
    if (std::abs(trace - 1.0) > 1e-6) {
        throw std::invalid_argument("HermitianEstimate: trace " + std::to_string(trace) +
                                    " is not 1 within 1e-6");
    }
}

HermitianEstimate HermitianEstimate::from_pure(const StateVector& psi) {
    const Eigen::VectorXcd v = psi.to_eigen();
    return HermitianEstimate(psi.n_qubits(), v * v.adjoint());
}

HermitianEstimate HermitianEstimate::from_density(const DensityMatrix& rho) {
    return HermitianEstimate(rho.n_qubits(), rho.entries());
}

}  // namespace robustprep
