// Core quantum value types: pure states, density matrices, and tomographic
// estimates. Qubit 0 is the least significant bit of every basis index.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace robustprep {

using complex_t = std::complex<double>;

inline std::size_t dim_for_qubits(int n_qubits) { return std::size_t{1} << n_qubits; }

// Normalized pure state over n qubits. Immutable after construction; the
// constructor enforces length 2^n and unit norm (1e-10).
class StateVector {
  public:
    StateVector(int n_qubits, std::vector<complex_t> amplitudes);

    static StateVector zero_state(int n_qubits);
    static StateVector computational_basis(int n_qubits, std::uint64_t index);
    // Normalizes the given amplitudes; throws if the norm is (near) zero.
    static StateVector normalized(int n_qubits, std::vector<complex_t> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const complex_t> amplitudes() const { return amplitudes_; }
    const complex_t& operator[](std::size_t i) const { return amplitudes_[i]; }

    Eigen::VectorXcd to_eigen() const;

  private:
    int n_qubits_;
    std::vector<complex_t> amplitudes_;
};

// Exact mixed state: Hermitian (1e-10), trace one (1e-10), PSD (eigenvalues
// >= -1e-9).
class DensityMatrix {
  public:
    DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

  private:
    int n_qubits_;
    Eigen::MatrixXcd entries_;
};

// Tomographic state estimate: Hermitian (1e-10) with trace one (1e-6) but not
// necessarily PSD -- shadow estimates routinely carry negative eigenvalues.
class HermitianEstimate {
  public:
    HermitianEstimate(int n_qubits, Eigen::MatrixXcd entries);

    static HermitianEstimate from_pure(const StateVector& psi);
    static HermitianEstimate from_density(const DensityMatrix& rho);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

  private:
    int n_qubits_;
    Eigen::MatrixXcd entries_;
};

// Shared validation helpers.
double hermiticity_deviation(const Eigen::MatrixXcd& m);
bool is_hermitian(const Eigen::MatrixXcd& m, double tol);
double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

}  // namespace robustprep
