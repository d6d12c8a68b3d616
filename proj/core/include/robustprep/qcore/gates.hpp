// Gate alphabet and unitary construction.
//
// Conventions fixed here and used everywhere else:
//   * rotations use the half-angle form R_P(theta) = exp(-i theta P / 2);
//   * a two-qubit matrix acts on a local space where the first listed qubit
//     is the least significant local bit (CNOT: control first, RZX: Z first);
//   * Pauli strings index qubits by character position (position q = qubit q).
#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace robustprep {

enum class GateKind { RX, RY, RZ, RZX, CNOT, SX, X, H, SDG };

int gate_arity(GateKind kind);
bool gate_is_parameterized(GateKind kind);

// Generator Pauli string for parameterized kinds ("X", "Y", "Z", "ZX");
// throws for non-parameterized kinds. Every generator squares to identity,
// which is what makes +-pi/2 parameter shifts exact.
std::string_view gate_generator(GateKind kind);

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

// Unitary of a gate; `angle` is required exactly for parameterized kinds.
// Returns a 2x2 or 4x4 matrix in the local-qubit convention above.
Eigen::MatrixXcd gate_unitary(GateKind kind, std::optional<double> angle = std::nullopt);

// Single-qubit Pauli matrix for letters I, X, Y, Z.
Eigen::Matrix2cd pauli_matrix(char letter);

// Pre-measurement rotation shared by the device and the tomography module:
// Z -> identity, X -> H, Y -> H * SDG. Keeping one definition avoids the
// silent basis mismatch between sampled counts and snapshot inversion.
Eigen::Matrix2cd basis_change_unitary(char basis);

// Generator matrix (squares to identity) and equivalent rotation angle such
// that the gate equals exp(-i angle G / 2) up to global phase. Defined for
// every kind; used by the device to apply coherent distortion to gates that
// carry no explicit parameter.
struct EquivalentRotation {
    Eigen::MatrixXcd generator;
    double angle;
};
EquivalentRotation gate_equivalent_rotation(GateKind kind);

}  // namespace robustprep
